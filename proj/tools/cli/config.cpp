// config.cpp

#include "config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numbers>
#include <limits>
#include <set>
#include <sstream>

#include "randbath/dephasing.hpp"
#include "randbath/errors.hpp"
#include "randbath/geomphase.hpp"

namespace randbath::cli {

using nlohmann::json;

std::vector<double> GridSpec::values() const { return make_time_grid(start, stop, step); }

std::string GridSpec::str() const {
    std::ostringstream out;
    out.precision(17);
    out << start << ':' << stop << ':' << step;
    return out.str();
}

GridSpec parse_grid(const std::string& text, const std::string& field) {
    std::vector<std::string> pieces;
    std::stringstream in(text);
    for (std::string piece; std::getline(in, piece, ':');) pieces.push_back(piece);
    if (pieces.size() != 3 || text.back() == ':') {
        throw ConfigError(field, "expected start:stop:step, got '" + text + "'");
    }
    double parts[3];
    for (int i = 0; i < 3; ++i) {
        try {
            std::size_t used = 0;
            parts[i] = std::stod(pieces[i], &used);
            if (used != pieces[i].size()) throw std::invalid_argument(pieces[i]);
        } catch (const std::exception&) {
            throw ConfigError(field, "'" + pieces[i] + "' is not a number in '" + text + "'");
        }
    }
    const GridSpec g{parts[0], parts[1], parts[2]};
    if (!std::isfinite(g.start) || !std::isfinite(g.stop)) throw ConfigError(field, "bounds must be finite");
    if (!(g.step > 0.0) || !std::isfinite(g.step)) throw ConfigError(field, "step must be finite and > 0");
    if (g.stop < g.start) throw ConfigError(field, "stop must be >= start");
    return g;
}

const char* to_string(GpMode mode) noexcept {
    switch (mode) {
        case GpMode::Single: return "single";
        case GpMode::Surface: return "surface";
        case GpMode::Lambda: return "lambda";
        case GpMode::Perturbative: return "perturbative";
    }
    return "unknown";
}

GpMode gp_mode_from_string(const std::string& name) {
    if (name == "single") return GpMode::Single;
    if (name == "surface") return GpMode::Surface;
    if (name == "lambda") return GpMode::Lambda;
    if (name == "perturbative") return GpMode::Perturbative;
    throw ConfigError("gp.mode", "expected single|surface|lambda|perturbative, got '" + name + "'");
}

void RunConfig::validate() const {
    bath.validate();
    if (bath.phase_profile == ProfileKind::Custom) {
        throw ConfigError("profile", "custom profiles are available through the library only");
    }
    QubitState{theta0}.validate();
    if (theta0_grid.start < 0.0 || theta0_grid.stop > std::numbers::pi + 1e-12) {
        throw ConfigError("gp.theta0_grid", "must lie in [0, pi]");
    }
    if (gamma_grid.start < 0.0) throw ConfigError("gp.gamma_grid", "gamma must be >= 0");
    if (mc_modes < 1) throw ConfigError("mc.modes", "must be >= 1");
    if (mc_trajectories < 1) throw ConfigError("mc.trajectories", "must be >= 1");
    if (!(mc_dt > 0.0) || !std::isfinite(mc_dt)) throw ConfigError("mc.dt", "must be finite and > 0");
    if (pdist_points < 3) throw ConfigError("pdist.points", "must be >= 3");
    for (double t : pdist_times) {
        if (!(t > 0.0) || !std::isfinite(t)) {
            throw ConfigError("pdist.times",
                              "snapshots need t > 0 (t = 0 is the delta-function initial condition)");
        }
    }
}

EnsembleConfig RunConfig::ensemble() const {
    EnsembleConfig e;
    e.modes = mc_modes;
    e.trajectories = mc_trajectories;
    e.dt = mc_dt;
    e.horizon = grid.stop;
    e.seed = seed;
    e.model = mc_model;
    e.threads = threads;
    return e;
}

json RunConfig::to_json() const {
    return json{
        {"bath",
         {{"gamma", bath.gamma},
          {"cutoff", bath.cutoff},
          {"diffusion", bath.diffusion},
          {"ohmicity", bath.ohmicity},
          {"phase_lambda", bath.phase_lambda},
          {"omega", bath.omega},
          {"profile", std::string(randbath::to_string(bath.phase_profile))}}},
        {"theta0", theta0},
        {"grid", grid.str()},
        {"dip", dip},
        {"threads", threads},
        {"gp",
         {{"mode", to_string(gp_mode)},
          {"theta0_grid", theta0_grid.str()},
          {"gamma_grid", gamma_grid.str()},
          {"lambda_grid", lambda_grid.str()}}},
        {"mc",
         {{"modes", mc_modes},
          {"trajectories", mc_trajectories},
          {"dt", mc_dt},
          {"seed", seed},
          {"phase_model", std::string(randbath::to_string(mc_model))}}},
        {"pdist", {{"times", pdist_times}, {"points", pdist_points}}},
    };
}

namespace {

const json& require_object(const json& node, const std::string& field) {
    if (!node.is_object()) throw ConfigError(field, "expected an object");
    return node;
}

void reject_unknown(const json& node, const std::string& prefix, const std::set<std::string>& allowed) {
    for (const auto& [key, value] : node.items()) {
        if (!allowed.count(key)) throw ConfigError(prefix + key, "unknown key");
    }
}

double get_number(const json& v, const std::string& field) {
    if (!v.is_number()) throw ConfigError(field, "expected a number");
    return v.get<double>();
}

long long get_integer(const json& v, const std::string& field) {
    if (v.is_number_integer()) return v.get<long long>();
    if (v.is_number_float()) {
        const double d = v.get<double>();
        if (d == std::floor(d) && std::abs(d) < 9e15) return static_cast<long long>(d);
    }
    throw ConfigError(field, "expected an integer");
}

int get_int(const json& v, const std::string& field) {
    const long long n = get_integer(v, field);
    if (n < std::numeric_limits<int>::min() || n > std::numeric_limits<int>::max()) {
        throw ConfigError(field, "integer out of range");
    }
    return static_cast<int>(n);
}

std::string get_string(const json& v, const std::string& field) {
    if (!v.is_string()) throw ConfigError(field, "expected a string");
    return v.get<std::string>();
}

GridSpec get_grid(const json& v, const std::string& field) { return parse_grid(get_string(v, field), field); }

void apply_bath(BathConfig& bath, const json& node) {
    require_object(node, "bath");
    reject_unknown(node, "bath.", {"gamma", "cutoff", "diffusion", "ohmicity", "phase_lambda", "omega", "profile"});
    if (node.contains("gamma")) bath.gamma = get_number(node["gamma"], "bath.gamma");
    if (node.contains("cutoff")) bath.cutoff = get_number(node["cutoff"], "bath.cutoff");
    if (node.contains("diffusion")) bath.diffusion = get_number(node["diffusion"], "bath.diffusion");
    if (node.contains("ohmicity")) bath.ohmicity = get_int(node["ohmicity"], "bath.ohmicity");
    if (node.contains("phase_lambda")) bath.phase_lambda = get_number(node["phase_lambda"], "bath.phase_lambda");
    if (node.contains("omega")) bath.omega = get_number(node["omega"], "bath.omega");
    if (node.contains("profile")) {
        try {
            bath.phase_profile = profile_kind_from_string(get_string(node["profile"], "bath.profile"));
        } catch (const ConfigError& e) {
            throw ConfigError("bath.profile", e.what());
        }
    }
}

void apply_gp(RunConfig& c, const json& node) {
    require_object(node, "gp");
    reject_unknown(node, "gp.", {"mode", "theta0_grid", "gamma_grid", "lambda_grid"});
    if (node.contains("mode")) c.gp_mode = gp_mode_from_string(get_string(node["mode"], "gp.mode"));
    if (node.contains("theta0_grid")) c.theta0_grid = get_grid(node["theta0_grid"], "gp.theta0_grid");
    if (node.contains("gamma_grid")) c.gamma_grid = get_grid(node["gamma_grid"], "gp.gamma_grid");
    if (node.contains("lambda_grid")) c.lambda_grid = get_grid(node["lambda_grid"], "gp.lambda_grid");
}

void apply_mc(RunConfig& c, const json& node) {
    require_object(node, "mc");
    reject_unknown(node, "mc.", {"modes", "trajectories", "dt", "seed", "phase_model"});
    if (node.contains("modes")) c.mc_modes = get_int(node["modes"], "mc.modes");
    if (node.contains("trajectories")) c.mc_trajectories = get_int(node["trajectories"], "mc.trajectories");
    if (node.contains("dt")) c.mc_dt = get_number(node["dt"], "mc.dt");
    if (node.contains("seed")) {
        const json& s = node["seed"];
        if (!s.is_number_unsigned()) throw ConfigError("mc.seed", "expected an unsigned 64-bit integer");
        c.seed = s.get<std::uint64_t>();
    }
    if (node.contains("phase_model")) {
        try {
            c.mc_model = phase_model_from_string(get_string(node["phase_model"], "mc.phase_model"));
        } catch (const ConfigError& e) {
            throw ConfigError("mc.phase_model", e.what());
        }
    }
}

void apply_pdist(RunConfig& c, const json& node) {
    require_object(node, "pdist");
    reject_unknown(node, "pdist.", {"times", "points"});
    if (node.contains("times")) {
        const json& t = node["times"];
        if (!t.is_array() || t.empty()) throw ConfigError("pdist.times", "expected a non-empty array of numbers");
        c.pdist_times.clear();
        for (const auto& v : t) c.pdist_times.push_back(get_number(v, "pdist.times"));
    }
    if (node.contains("points")) c.pdist_points = get_int(node["points"], "pdist.points");
}

[[noreturn]] void rethrow_located(const ConfigError& e, const std::string& text, const std::string& source) {
    std::ostringstream msg;
    msg << source;
    if (const auto line = locate_field(text, e.field())) msg << ':' << *line;
    msg << ": " << e.what();
    throw ConfigFileError(msg.str());
}

}  // namespace

void apply_json(RunConfig& config, const json& doc, const std::string& text, const std::string& source) {
    try {
        require_object(doc, "<root>");
        reject_unknown(doc, "", {"bath", "theta0", "grid", "dip", "threads", "gp", "mc", "pdist"});
        if (doc.contains("bath")) apply_bath(config.bath, doc["bath"]);
        if (doc.contains("theta0")) config.theta0 = get_number(doc["theta0"], "theta0");
        if (doc.contains("grid")) config.grid = get_grid(doc["grid"], "grid");
        if (doc.contains("dip")) {
            if (!doc["dip"].is_boolean()) throw ConfigError("dip", "expected true or false");
            config.dip = doc["dip"].get<bool>();
        }
        if (doc.contains("threads")) {
            const long long n = get_integer(doc["threads"], "threads");
            if (n < 0 || n > 4096) throw ConfigError("threads", "must lie in [0, 4096]");
            config.threads = static_cast<unsigned>(n);
        }
        if (doc.contains("gp")) apply_gp(config, doc["gp"]);
        if (doc.contains("mc")) apply_mc(config, doc["mc"]);
        if (doc.contains("pdist")) apply_pdist(config, doc["pdist"]);
    } catch (const ConfigError& e) {
        rethrow_located(e, text, source);
    }
}

void load_config_file(RunConfig& config, const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigFileError(path.string() + ": cannot open config file");
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        // e.byte is 1-based and points just past the offending character.
        const std::size_t upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
        throw ConfigFileError(path.string() + ":" + std::to_string(line) + ": invalid JSON: " + e.what());
    }
    apply_json(config, doc, text, path.string());
    try {
        config.validate();
    } catch (const ConfigError& e) {
        rethrow_located(e, text, path.string());
    }
}

std::optional<int> locate_field(const std::string& text, const std::string& field) {
    if (text.empty() || field.empty()) return std::nullopt;
    auto search = [&](const std::vector<std::string>& path) -> std::optional<std::size_t> {
        std::size_t pos = 0;
        for (const auto& key : path) {
            const std::string quoted = '"' + key + '"';
            for (;;) {
                pos = text.find(quoted, pos);
                if (pos == std::string::npos) return std::nullopt;
                std::size_t after = pos + quoted.size();
                while (after < text.size() && std::isspace(static_cast<unsigned char>(text[after]))) ++after;
                if (after < text.size() && text[after] == ':') break;
                pos += quoted.size();
            }
        }
        return pos;
    };
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (std::size_t dot; (dot = field.find('.', start)) != std::string::npos; start = dot + 1) {
        parts.push_back(field.substr(start, dot - start));
    }
    parts.push_back(field.substr(start));
    auto found = search(parts);
    // Core validators name bare fields, so fall back to the last component.
    if (!found && parts.size() > 1) found = search({parts.back()});
    if (!found) return std::nullopt;
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(*found), '\n'));
}

}  // namespace randbath::cli
