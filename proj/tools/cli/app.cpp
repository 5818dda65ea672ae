// app.cpp

#include "app.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "config.hpp"
#include "randbath/errors.hpp"
#include "randbath/version.hpp"

namespace randbath::cli {

namespace {

std::vector<double> parse_times(const std::string& text) {
    std::vector<double> times;
    std::stringstream in(text);
    for (std::string piece; std::getline(in, piece, ',');) {
        try {
            std::size_t used = 0;
            times.push_back(std::stod(piece, &used));
            if (used != piece.size()) throw std::invalid_argument(piece);
        } catch (const std::exception&) {
            throw ConfigError("pdist.times", "'" + piece + "' is not a number");
        }
    }
    if (times.empty()) throw ConfigError("pdist.times", "expected a comma-separated list of times");
    return times;
}

struct Flags {
    std::string config_path, out, grid, profile, mode, theta0_grid, gamma_grid, lambda_grid, phase_model, times;
    double gamma{}, cutoff{}, diffusion{}, phase_lambda{}, theta0{}, dt{};
    int ohmicity{}, modes{}, trajectories{}, points{}, figure{};
    std::uint64_t seed{};
    unsigned threads{};
    bool dip{false}, json{false};
};

void emit(const Table& table, const std::string& command, const RunConfig& config, const Flags& flags,
          std::ostream& out) {
    std::ofstream file;
    std::ostream* sink = &out;
    if (!flags.out.empty()) {
        file.open(flags.out);
        if (!file) throw std::runtime_error("cannot open output file " + flags.out);
        sink = &file;
    }
    if (flags.json) {
        *sink << table_json(table, run_metadata(command, config)).dump(2) << '\n';
    } else {
        write_csv(*sink, table);
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Decoherence and geometric phase of a qubit in a random-phase bath", "randbath"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    app.fallthrough();

    Flags f;
    std::map<std::string, CLI::Option*> o;
    o["config"] = app.add_option("--config", f.config_path, "JSON config file")->check(CLI::ExistingFile);
    o["out"] = app.add_option("--out", f.out, "output file (output directory for reproduce-figure)");
    o["seed"] = app.add_option("--seed", f.seed, "Monte Carlo seed");
    o["grid"] = app.add_option("--grid", f.grid, "time grid start:stop:step");
    o["dip"] = app.add_flag("--dip", f.dip, "report the decoherence dip");
    o["json"] = app.add_flag("--json", f.json, "write a JSON document instead of CSV");
    o["threads"] = app.add_option("--threads", f.threads, "worker threads (0 = all cores)");
    o["gamma"] = app.add_option("--gamma", f.gamma, "coupling strength");
    o["cutoff"] = app.add_option("--cutoff", f.cutoff, "spectral cutoff");
    o["diffusion"] = app.add_option("--diffusion", f.diffusion, "phase diffusion constant D");
    o["phase-lambda"] = app.add_option("--phase-lambda", f.phase_lambda, "initial phase profile parameter");
    o["ohmicity"] = app.add_option("--ohmicity", f.ohmicity, "spectral exponent n");
    o["theta0"] = app.add_option("--theta0", f.theta0, "initial Bloch polar angle");
    o["profile"] = app.add_option("--profile", f.profile, "initial phase profile")
                       ->check(CLI::IsMember({"linear", "quadratic"}));

    auto* decoherence = app.add_subcommand("decoherence", "|F(t)| on a time grid");
    auto* gp = app.add_subcommand("gp", "geometric phase, surfaces and sweeps");
    o["mode"] = gp->add_option("--mode", f.mode, "single|surface|lambda|perturbative")
                    ->check(CLI::IsMember({"single", "surface", "lambda", "perturbative"}));
    o["theta0-grid"] = gp->add_option("--theta0-grid", f.theta0_grid, "theta0 grid start:stop:step");
    o["gamma-grid"] = gp->add_option("--gamma-grid", f.gamma_grid, "gamma grid start:stop:step");
    o["lambda-grid"] = gp->add_option("--lambda-grid", f.lambda_grid, "lambda grid start:stop:step");
    auto* mc = app.add_subcommand("mc", "Monte Carlo estimate of |F(t)| against exp(-beta)");
    o["modes"] = mc->add_option("--modes", f.modes, "bath modes K");
    o["trajectories"] = mc->add_option("--trajectories", f.trajectories, "trajectories M");
    o["dt"] = mc->add_option("--dt", f.dt, "phase path time step");
    o["phase-model"] = mc->add_option("--phase-model", f.phase_model, "frozen-phase|path-integral");
    auto* pdist = app.add_subcommand("pdist", "phase distribution snapshots P(x, t)");
    o["times"] = pdist->add_option("--times", f.times, "comma-separated snapshot times");
    o["points"] = pdist->add_option("--points", f.points, "x samples on [-pi, pi]");
    auto* figure = app.add_subcommand("reproduce-figure", "write the data behind figure N (1..7)");
    figure->add_option("N", f.figure, "figure number")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kOk : kConfigError;
    }
    auto given = [&](const char* name) { return o.at(name)->count() > 0; };

    try {
        RunConfig config;
        if (given("config")) load_config_file(config, f.config_path);
        if (given("seed")) config.seed = f.seed;
        if (given("grid")) config.grid = parse_grid(f.grid, "grid");
        if (given("dip")) config.dip = f.dip;
        if (given("threads")) config.threads = f.threads;
        if (given("gamma")) config.bath.gamma = f.gamma;
        if (given("cutoff")) config.bath.cutoff = f.cutoff;
        if (given("diffusion")) config.bath.diffusion = f.diffusion;
        if (given("phase-lambda")) config.bath.phase_lambda = f.phase_lambda;
        if (given("ohmicity")) config.bath.ohmicity = f.ohmicity;
        if (given("theta0")) config.theta0 = f.theta0;
        if (given("profile")) config.bath.phase_profile = profile_kind_from_string(f.profile);
        if (given("mode")) config.gp_mode = gp_mode_from_string(f.mode);
        if (given("theta0-grid")) config.theta0_grid = parse_grid(f.theta0_grid, "gp.theta0_grid");
        if (given("gamma-grid")) config.gamma_grid = parse_grid(f.gamma_grid, "gp.gamma_grid");
        if (given("lambda-grid")) config.lambda_grid = parse_grid(f.lambda_grid, "gp.lambda_grid");
        if (given("modes")) config.mc_modes = f.modes;
        if (given("trajectories")) config.mc_trajectories = f.trajectories;
        if (given("dt")) config.mc_dt = f.dt;
        if (given("phase-model")) config.mc_model = phase_model_from_string(f.phase_model);
        if (given("times")) config.pdist_times = parse_times(f.times);
        if (given("points")) config.pdist_points = f.points;

        if (figure->parsed()) {
            const Figure fig = build_figure(f.figure, config);
            const std::filesystem::path dir = f.out.empty() ? std::filesystem::path(".") : std::filesystem::path(f.out);
            write_figure(fig, dir);
            for (const auto& file : fig.files) out << (dir / file.name).string() << '\n';
            out << (dir / ("fig" + std::to_string(fig.number) + ".json")).string() << '\n';
            return kOk;
        }
        if (decoherence->parsed()) {
            emit(cmd_decoherence(config), "decoherence", config, f, out);
        } else if (gp->parsed()) {
            emit(cmd_gp(config), "gp", config, f, out);
        } else if (mc->parsed()) {
            const Table table = cmd_mc(config);
            emit(table, "mc", config, f, out);
            for (const auto& w : table.report["warnings"]) err << "warning: " << w.get<std::string>() << '\n';
        } else if (pdist->parsed()) {
            emit(cmd_pdist(config), "pdist", config, f, out);
        }
        return kOk;
    } catch (const ConfigFileError& e) {
        err << "error: " << e.what() << '\n';
        return kConfigError;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kConfigError;
    } catch (const MisuseError& e) {
        err << "error: " << e.what() << '\n';
        return kConfigError;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kConfigError;
    } catch (const ConvergenceError& e) {
        err << "error: " << e.what() << " (best estimate " << format_number(e.best_estimate()) << ", error "
            << format_number(e.achieved_error()) << ")\n";
        return kNonConvergence;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kFailure;
    }
}

}  // namespace randbath::cli
