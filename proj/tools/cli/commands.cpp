// commands.cpp

#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "randbath/dephasing.hpp"
#include "randbath/errors.hpp"
#include "randbath/geomphase.hpp"
#include "randbath/montecarlo.hpp"
#include "randbath/version.hpp"

namespace randbath::cli {

namespace {

using std::numbers::pi;

std::string fmt(double v) { return format_number(v); }

// Grid values with roundoff past pi pulled back onto the endpoint.
std::vector<double> theta0_values(const GridSpec& grid) {
    auto values = grid.values();
    for (double& v : values) v = std::clamp(v, 0.0, pi);
    return values;
}

nlohmann::json dip_json(const std::optional<Dip>& dip) {
    if (!dip) return nullptr;
    return {{"t", dip->time}, {"F", dip->value}, {"depth", dip->depth}};
}

std::string dip_note(const char* label, const std::optional<Dip>& dip) {
    if (!dip) return std::string(label) + " none";
    return std::string(label) + " t=" + fmt(dip->time) + " F=" + fmt(dip->value) + " depth=" + fmt(dip->depth);
}

void add_monotonicity(Table& table, const char* label, const std::vector<double>& theta0,
                      const std::vector<Monotonicity>& verdicts, double tolerance) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < theta0.size(); ++i) {
        table.notes.push_back(std::string(label) + " theta0=" + fmt(theta0[i]) + " " + to_string(verdicts[i]));
        rows.push_back({{"theta0", theta0[i]}, {"verdict", to_string(verdicts[i])}});
    }
    table.notes.push_back("integrator_tolerance=" + fmt(tolerance));
    table.report[label] = rows;
    table.report["integrator_tolerance"] = tolerance;
}

Table gp_single(const RunConfig& config) {
    const GPResult gp = geometric_phase(config.bath, PhaseProfile::from_config(config.bath), config.theta0);
    Table table;
    table.columns = {"theta0", "phi_g", "phi_u", "delta_phi", "err"};
    table.rows.push_back({config.theta0, gp.phi_g, gp.phi_u, gp.delta, gp.tolerance});
    if ((config.bath.ohmicity == 1 || config.bath.ohmicity == 3) && config.bath.phase_profile == ProfileKind::Linear) {
        const double first_order = perturbative_correction(config.bath, config.theta0);
        table.notes.push_back("first_order_delta_phi=" + fmt(first_order));
        table.report["first_order_delta_phi"] = first_order;
    }
    return table;
}

Table gp_surface_table(const RunConfig& config) {
    const auto surface = gp_surface(config.bath, PhaseProfile::from_config(config.bath),
                                    theta0_values(config.theta0_grid), config.gamma_grid.values(), config.threads);
    Table table;
    table.columns = {"theta0", "gamma", "delta_phi_norm"};
    for (std::size_t i = 0; i < surface.theta0.size(); ++i) {
        for (std::size_t j = 0; j < surface.gamma.size(); ++j) {
            const auto& v = surface.normalized[i][j];
            table.rows.push_back({surface.theta0[i], surface.gamma[j],
                                  v ? Cell{*v} : Cell{std::string("undefined-normalization")}});
        }
    }
    add_monotonicity(table, "gamma_monotonicity", surface.theta0, surface.gamma_monotonicity, surface.max_tolerance);
    return table;
}

Table gp_lambda_table(const RunConfig& config) {
    if (config.bath.phase_profile != ProfileKind::Linear) {
        throw ConfigError("profile", "the lambda sweep is defined for the linear profile");
    }
    const auto sweep =
        gp_lambda_sweep(config.bath, theta0_values(config.theta0_grid), config.lambda_grid.values(), config.threads);
    Table table;
    table.columns = {"theta0", "lambda", "delta_phi"};
    for (std::size_t i = 0; i < sweep.theta0.size(); ++i) {
        for (std::size_t j = 0; j < sweep.lambda.size(); ++j) {
            table.rows.push_back({sweep.theta0[i], sweep.lambda[j], sweep.abs_delta[i][j]});
        }
    }
    add_monotonicity(table, "lambda_monotonicity", sweep.theta0, sweep.lambda_monotonicity, sweep.max_tolerance);
    return table;
}

Table gp_perturbative_table(const RunConfig& config) {
    if (config.bath.ohmicity != 1 && config.bath.ohmicity != 3) {
        throw ConfigError("ohmicity", "the first-order estimate exists for n = 1 and n = 3 only");
    }
    if (config.bath.phase_profile != ProfileKind::Linear) {
        throw ConfigError("profile", "the first-order estimate assumes the linear profile");
    }
    Table table;
    table.columns = {"gamma", "phi_g", "phi_pred"};
    nlohmann::json errors = nlohmann::json::array();
    for (double gamma : config.gamma_grid.values()) {
        BathConfig bath = config.bath;
        bath.gamma = gamma;
        const GPResult gp = geometric_phase(BetaFunction(bath), config.theta0);
        const double pred = gp.phi_u + perturbative_correction(bath, config.theta0);
        table.rows.push_back({gamma, gp.phi_g, pred});
        errors.push_back(gp.phi_g != 0.0 ? std::abs(pred - gp.phi_g) / std::abs(gp.phi_g) : 0.0);
    }
    table.report["relative_error"] = errors;
    return table;
}

}  // namespace

Table cmd_decoherence(const RunConfig& config) {
    config.validate();
    const BetaFunction beta(config.bath);
    const auto curve = decoherence_factor(config.grid.values(), beta, config.threads);
    Table table;
    table.columns = {"t", "F", "err", "method"};
    const std::string method(to_string(curve.method));
    for (std::size_t i = 0; i < curve.times.size(); ++i) {
        table.rows.push_back({curve.times[i], curve.values[i], curve.errors[i], method});
    }
    if (config.dip) {
        const auto dip = curve.times.size() >= 3 ? find_dip(curve) : std::nullopt;
        table.notes.push_back(dip_note("dip", dip));
        table.report["dip"] = dip_json(dip);
    }
    return table;
}

Table cmd_gp(const RunConfig& config) {
    config.validate();
    switch (config.gp_mode) {
        case GpMode::Single: return gp_single(config);
        case GpMode::Surface: return gp_surface_table(config);
        case GpMode::Lambda: return gp_lambda_table(config);
        case GpMode::Perturbative: return gp_perturbative_table(config);
    }
    throw ConfigError("gp.mode", "unknown mode");
}

Table cmd_mc(const RunConfig& config) {
    config.validate();
    if (config.grid.start < 0.0) throw ConfigError("grid", "Monte Carlo times start at t = 0");
    if (!(config.grid.stop > 0.0)) throw ConfigError("grid", "Monte Carlo needs stop > 0");
    if (config.mc_dt > config.grid.step * (1.0 + 1e-12)) throw ConfigError("mc.dt", "must not exceed the grid step");
    const double ratio = config.grid.step / config.mc_dt;
    if (std::abs(ratio - std::round(ratio)) > 1e-9 * ratio) {
        throw ConfigError("mc.dt", "the grid step must be an integer multiple of dt");
    }
    const PhaseProfile profile = PhaseProfile::from_config(config.bath);
    const McCurve mc = mc_decoherence_factor(config.bath, profile, config.ensemble());
    const BetaFunction beta(config.bath, profile);
    const auto stride = static_cast<std::size_t>(std::llround(config.grid.step / config.mc_dt));
    const double first = config.grid.start - 0.5 * config.mc_dt;

    Table table;
    table.columns = {"t", "F_mc", "stderr", "F_analytic", "dev"};
    DecoherenceCurve emitted;
    double max_dev = 0.0;
    double max_ratio = 0.0;
    for (std::size_t j = 0; j < mc.times.size(); j += stride) {
        const double t = mc.times[j];
        if (t < first) continue;
        const double f_mc = mc.magnitude(j);
        const double f_an = beta.decoherence(t).value;
        const double dev = std::abs(f_mc - f_an);
        table.rows.push_back({t, f_mc, mc.stderr_abs[j], f_an, dev});
        max_dev = std::max(max_dev, dev);
        if (mc.stderr_abs[j] > 0.0) max_ratio = std::max(max_ratio, dev / mc.stderr_abs[j]);
        emitted.times.push_back(t);
        emitted.values.push_back(f_mc);
        emitted.errors.push_back(mc.stderr_abs[j]);
    }
    for (const auto& w : mc.warnings) table.notes.push_back("warning: " + w);
    table.notes.push_back("max_dev=" + fmt(max_dev));
    table.report["max_dev"] = max_dev;
    table.report["max_dev_over_stderr"] = max_ratio;
    table.report["warnings"] = mc.warnings;
    table.report["phase_model"] = std::string(to_string(mc.model));
    if (config.dip) {
        const auto dip = emitted.times.size() >= 3 ? find_dip(emitted) : std::nullopt;
        table.notes.push_back(dip_note("mc_dip", dip));
        table.report["mc_dip"] = dip_json(dip);
    }
    return table;
}

Table cmd_pdist(const RunConfig& config) {
    config.validate();
    if (config.bath.diffusion == 0.0) {
        throw ConfigError("diffusion", "P(x, t) stays a delta function when D = 0");
    }
    const PhaseDistribution pd(config.bath.diffusion);
    const int n = config.pdist_points;
    const double dx = 2.0 * pi / (n - 1);
    Table table;
    table.columns = {"t", "x", "P"};
    nlohmann::json norms = nlohmann::json::array();
    for (double t : config.pdist_times) {
        double integral = 0.0;
        for (int i = 0; i < n; ++i) {
            // Symmetric about 0 bit for bit.
            const double x = pi * static_cast<double>(2 * i - (n - 1)) / static_cast<double>(n - 1);
            const double p = pd(x, t);
            table.rows.push_back({t, x, p});
            integral += (i == 0 || i == n - 1 ? 0.5 : 1.0) * p * dx;
        }
        table.notes.push_back("normalization t=" + fmt(t) + " integral=" + fmt(integral) +
                              " terms=" + std::to_string(pd.terms(t)));
        if (pd.truncation_warning(t)) {
            table.notes.push_back("warning: D t = " + fmt(config.bath.diffusion * t) +
                                  " is below 1e-6; the series is truncated at " + std::to_string(pd.terms(t)) +
                                  " terms");
        }
        norms.push_back({{"t", t}, {"integral", integral}, {"terms", pd.terms(t)}});
    }
    table.report["normalization"] = norms;
    return table;
}

nlohmann::json run_metadata(const std::string& command, const RunConfig& config) {
    return {{"command", command}, {"version", kVersion}, {"seed", config.seed}, {"config", config.to_json()}};
}

// ------------------------------- Figures ------------------------------------

namespace {

RunConfig figure_base(const RunConfig& base, double gamma, double diffusion, int n) {
    RunConfig c;
    c.threads = base.threads;
    c.seed = base.seed;
    c.bath.gamma = gamma;
    c.bath.cutoff = 1.0;
    c.bath.diffusion = diffusion;
    c.bath.phase_lambda = 1.0;
    c.bath.ohmicity = n;
    c.grid = GridSpec{0.0, kDefaultGridStop, kDefaultGridStep};
    return c;
}

FigureFile decoherence_file(std::string name, RunConfig c) {
    Table t = cmd_decoherence(c);
    return {std::move(name), "decoherence", std::move(c), std::move(t)};
}

FigureFile gp_file(std::string name, RunConfig c) {
    Table t = cmd_gp(c);
    return {std::move(name), "gp", std::move(c), std::move(t)};
}

}  // namespace

Figure build_figure(int number, const RunConfig& base) {
    Figure fig;
    fig.number = number;
    const GridSpec theta0_grid{0.0, pi, pi / 16};
    switch (number) {
        case 1: {
            fig.title = "decoherence factor, strong coupling: ohmic and supraohmic";
            fig.files.push_back(decoherence_file("fig1_ohmic.csv", figure_base(base, 3.0, 0.5, 1)));
            fig.files.push_back(decoherence_file("fig1_supraohmic.csv", figure_base(base, 3.0, 0.5, 3)));
            fig.notes.push_back("the Gaussian-bath reference curve is omitted: its parameters are not available");
            break;
        }
        case 2: {
            fig.title = "decoherence factor, weak coupling: dip near t = lambda";
            RunConfig ohmic = figure_base(base, 0.5, 0.1, 1);
            ohmic.dip = true;
            RunConfig supra = figure_base(base, 0.5, 0.1, 3);
            supra.dip = true;
            fig.files.push_back(decoherence_file("fig2_ohmic.csv", ohmic));
            fig.files.push_back(decoherence_file("fig2_supraohmic.csv", supra));
            break;
        }
        case 3: {
            fig.title = "decoherence factor, quadratic initial phase profile";
            for (int n : {1, 3}) {
                RunConfig c = figure_base(base, 3.0, 0.1, n);
                c.bath.phase_profile = ProfileKind::Quadratic;
                fig.files.push_back(decoherence_file(n == 1 ? "fig3_ohmic.csv" : "fig3_supraohmic.csv", c));
            }
            break;
        }
        case 4:
        case 5: {
            const int n = number == 4 ? 1 : 3;
            fig.title = std::string("normalized geometric-phase correction over (theta0, gamma), ") +
                        (n == 1 ? "ohmic" : "supraohmic");
            RunConfig c = figure_base(base, 0.0, 0.1, n);
            c.gp_mode = GpMode::Surface;
            c.theta0_grid = theta0_grid;
            c.gamma_grid = GridSpec{0.0, 1.0, 0.05};
            fig.files.push_back(gp_file(n == 1 ? "fig4_ohmic_surface.csv" : "fig5_supraohmic_surface.csv", c));
            fig.notes.push_back("theta0 = pi rows are flagged undefined-normalization (phi_U = 0)");
            break;
        }
        case 6: {
            fig.title = "exact geometric phase against the first-order estimate, theta0 = pi/4";
            for (int n : {1, 3}) {
                RunConfig c = figure_base(base, 0.0, 1.0, n);
                c.gp_mode = GpMode::Perturbative;
                c.theta0 = pi / 4;
                c.gamma_grid = GridSpec{0.0, 0.3, 0.01};
                fig.files.push_back(gp_file(n == 1 ? "fig6_ohmic.csv" : "fig6_supraohmic.csv", c));
            }
            break;
        }
        case 7: {
            fig.title = "geometric-phase correction over (theta0, lambda), ohmic";
            RunConfig c = figure_base(base, 3.0, 0.1, 1);
            c.gp_mode = GpMode::Lambda;
            c.theta0_grid = theta0_grid;
            c.lambda_grid = GridSpec{0.0, 5.0, 0.25};
            fig.files.push_back(gp_file("fig7_lambda.csv", c));
            break;
        }
        default:
            throw ConfigError("figure", "expected a figure number in 1..7, got " + std::to_string(number));
    }
    return fig;
}

void write_figure(const Figure& figure, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    nlohmann::json meta{{"figure", figure.number},
                        {"title", figure.title},
                        {"version", kVersion},
                        {"notes", figure.notes},
                        {"files", nlohmann::json::array()}};
    for (const auto& f : figure.files) {
        std::ofstream out(dir / f.name);
        if (!out) throw std::runtime_error("cannot write " + (dir / f.name).string());
        write_csv(out, f.table);
        meta["files"].push_back({{"file", f.name},
                                 {"command", f.command},
                                 {"columns", f.table.columns},
                                 {"rows", f.table.rows.size()},
                                 {"config", f.config.to_json()},
                                 {"report", f.table.report}});
    }
    std::ofstream out(dir / ("fig" + std::to_string(figure.number) + ".json"));
    if (!out) throw std::runtime_error("cannot write figure metadata in " + dir.string());
    out << meta.dump(2) << '\n';
}

}  // namespace randbath::cli
