// config.hpp: run configuration for the randbath command-line tool.
//
// JSON schema (every key optional, unknown keys rejected):
//
//   {
//     "bath":   {"gamma", "cutoff", "diffusion", "ohmicity", "phase_lambda",
//                "omega", "profile": "linear" | "quadratic"},
//     "theta0": number in [0, pi],
//     "grid":   "start:stop:step",
//     "dip":    bool,
//     "threads": integer >= 0,
//     "gp":     {"mode": "single" | "surface" | "lambda" | "perturbative",
//                "theta0_grid", "gamma_grid", "lambda_grid": "start:stop:step"},
//     "mc":     {"modes", "trajectories", "dt", "seed",
//                "phase_model": "frozen-phase" | "path-integral"},
//     "pdist":  {"times": [t1, t2, ...], "points": integer >= 3}
//   }
//
// Defaults are the weak-coupling ohmic parameters (gamma = 0.5, cutoff = 1,
// D = 0.1, lambda = 1, n = 1, linear profile).

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "randbath/bath.hpp"
#include "randbath/montecarlo.hpp"

namespace randbath::cli {

struct GridSpec {
    double start{0.0};
    double stop{10.0};
    double step{0.01};

    std::vector<double> values() const;
    std::string str() const;
};

// Parses "start:stop:step". Throws ConfigError(field, ...).
GridSpec parse_grid(const std::string& text, const std::string& field);

enum class GpMode { Single, Surface, Lambda, Perturbative };

const char* to_string(GpMode mode) noexcept;
GpMode gp_mode_from_string(const std::string& name);

struct RunConfig {
    BathConfig bath{};
    double theta0{0.7853981633974483};  // pi / 4
    GridSpec grid{};
    bool dip{false};
    unsigned threads{0};

    GpMode gp_mode{GpMode::Single};
    GridSpec theta0_grid{0.0, 3.141592653589793, 0.15707963267948966};
    GridSpec gamma_grid{0.0, 1.0, 0.05};
    GridSpec lambda_grid{0.0, 5.0, 0.25};

    int mc_modes{512};
    int mc_trajectories{2000};
    double mc_dt{0.005};
    std::uint64_t seed{20120417};
    PhaseModel mc_model{PhaseModel::FrozenPhase};

    std::vector<double> pdist_times{0.01, 0.1, 1.0, 10.0};
    int pdist_points{201};

    // Throws ConfigError naming the offending field.
    void validate() const;
    EnsembleConfig ensemble() const;
    nlohmann::json to_json() const;
};

// Config-file failure with the file location of the offending field.
class ConfigFileError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Applies `doc` on top of `config`. `text` and `source` are only used to
// report "source:line: field: message" on bad input.
void apply_json(RunConfig& config, const nlohmann::json& doc, const std::string& text = {},
                const std::string& source = "<config>");

// Reads, parses, applies and validates a JSON config file.
void load_config_file(RunConfig& config, const std::filesystem::path& path);

// 1-based line of the value for the dotted `field` path in `text`, if found.
std::optional<int> locate_field(const std::string& text, const std::string& field);

}  // namespace randbath::cli
