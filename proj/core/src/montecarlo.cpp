// montecarlo.cpp

#include "randbath/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "randbath/dephasing.hpp"
#include "randbath/errors.hpp"
#include "randbath/numerics.hpp"
#include "randbath/parallel.hpp"
#include "randbath/rng.hpp"

namespace randbath {

double DiscretizedBath::total_weight() const {
    std::vector<double> squares;
    squares.reserve(modes.size());
    for (const auto& m : modes) squares.push_back(m.amplitude * m.amplitude);
    return pairwise_sum(squares);
}

DiscretizedBath discretize_bath(const SpectralDensity& sd, const PhaseProfile& profile, int modes,
                                double omega_max) {
    if (modes < 1) throw ConfigError("modes", "must be >= 1");
    if (!(omega_max > 0.0) || !std::isfinite(omega_max)) throw ConfigError("omega_max", "must be finite and > 0");
    DiscretizedBath bath;
    bath.omega_max = omega_max;
    bath.delta_omega = omega_max / modes;
    bath.modes.reserve(static_cast<std::size_t>(modes));
    for (int k = 1; k <= modes; ++k) {
        const double omega = (static_cast<double>(k) - 0.5) * bath.delta_omega;
        bath.modes.push_back(BathMode{omega, std::sqrt(sd(omega) * bath.delta_omega), profile(omega)});
    }
    return bath;
}

std::string_view to_string(PhaseModel model) noexcept {
    switch (model) {
        case PhaseModel::FrozenPhase: return "frozen-phase";
        case PhaseModel::PathIntegral: return "path-integral";
    }
    return "unknown";
}

PhaseModel phase_model_from_string(std::string_view name) {
    if (name == "frozen-phase") return PhaseModel::FrozenPhase;
    if (name == "path-integral") return PhaseModel::PathIntegral;
    throw ConfigError("phase_model", "expected frozen-phase|path-integral, got '" + std::string(name) + "'");
}

void EnsembleConfig::validate() const {
    if (modes < 1) throw ConfigError("modes", "must be >= 1");
    if (trajectories < 1) throw ConfigError("trajectories", "must be >= 1");
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("dt", "must be finite and > 0");
    if (!(horizon > 0.0) || !std::isfinite(horizon)) throw ConfigError("horizon", "must be finite and > 0");
    if (!std::isfinite(omega_max)) throw ConfigError("omega_max", "must be finite");
}

std::size_t EnsembleConfig::steps() const {
    return static_cast<std::size_t>(std::llround(horizon / dt));
}

namespace {

std::vector<double> path_times(double dt, std::size_t steps) {
    std::vector<double> t(steps + 1);
    for (std::size_t j = 0; j <= steps; ++j) t[j] = static_cast<double>(j) * dt;
    return t;
}

void fill_path(CounterStream& rng, double sigma, std::vector<double>& path) {
    path[0] = 0.0;
    if (sigma == 0.0) {
        std::fill(path.begin(), path.end(), 0.0);
        return;
    }
    for (std::size_t j = 1; j < path.size(); ++j) path[j] = path[j - 1] + sigma * rng.normal();
}

void add_frozen_mode(const BathMode& mode, const std::vector<double>& path, const std::vector<double>& times,
                     std::vector<double>& phi) {
    if (mode.amplitude == 0.0) return;
    const double offset = std::sin(mode.phase);
    for (std::size_t j = 0; j < times.size(); ++j) {
        phi[j] += mode.amplitude * (std::sin(mode.omega * times[j] + mode.phase + path[j]) - offset);
    }
}

void add_path_integral_mode(const BathMode& mode, const std::vector<double>& path, const std::vector<double>& times,
                            std::vector<double>& phi) {
    if (mode.amplitude == 0.0) return;
    double previous = mode.amplitude * std::cos(mode.phase + path[0]);
    double integral = 0.0;
    for (std::size_t j = 1; j < times.size(); ++j) {
        const double current = mode.amplitude * std::cos(mode.omega * times[j] + mode.phase + path[j]);
        integral += 0.5 * (times[j] - times[j - 1]) * (previous + current);
        phi[j] += integral;
        previous = current;
    }
}

void check_shapes(const DiscretizedBath& bath, const std::vector<std::vector<double>>& paths,
                  const std::vector<double>& times) {
    if (paths.size() != bath.modes.size()) {
        throw std::invalid_argument("phase paths: expected one path per bath mode");
    }
    for (const auto& p : paths) {
        if (p.size() != times.size()) throw std::invalid_argument("phase paths: path length differs from time grid");
    }
}

// Sums over a block of trajectories, one entry per time point.
struct Moments {
    std::vector<double> re, im, re2, im2, reim;

    explicit Moments(std::size_t n) : re(n), im(n), re2(n), im2(n), reim(n) {}
};

constexpr int kChunkTrajectories = 8;

}  // namespace

std::vector<double> sample_phase_path(double diffusion, double dt, double horizon, std::uint64_t seed,
                                      std::uint64_t stream) {
    if (!(dt > 0.0)) throw ConfigError("dt", "must be > 0");
    if (!(horizon > 0.0)) throw ConfigError("horizon", "must be > 0");
    if (!(diffusion >= 0.0)) throw ConfigError("diffusion", "must be >= 0");
    const auto steps = static_cast<std::size_t>(std::llround(horizon / dt));
    std::vector<double> path(steps + 1);
    CounterStream rng(seed, stream);
    fill_path(rng, std::sqrt(2.0 * diffusion * dt), path);
    return path;
}

std::vector<double> accumulated_phase(const DiscretizedBath& bath, const std::vector<std::vector<double>>& paths,
                                      const std::vector<double>& times) {
    check_shapes(bath, paths, times);
    std::vector<double> phi(times.size(), 0.0);
    for (std::size_t k = 0; k < bath.modes.size(); ++k) add_path_integral_mode(bath.modes[k], paths[k], times, phi);
    return phi;
}

std::vector<double> frozen_phase(const DiscretizedBath& bath, const std::vector<std::vector<double>>& paths,
                                 const std::vector<double>& times) {
    check_shapes(bath, paths, times);
    std::vector<double> phi(times.size(), 0.0);
    for (std::size_t k = 0; k < bath.modes.size(); ++k) add_frozen_mode(bath.modes[k], paths[k], times, phi);
    return phi;
}

McCurve mc_decoherence_factor(const SpectralDensity& sd, double diffusion, const PhaseProfile& profile,
                              const EnsembleConfig& ensemble) {
    ensemble.validate();
    if (!std::isfinite(diffusion) || diffusion < 0.0) throw ConfigError("diffusion", "must be finite and >= 0");

    const double omega_max = ensemble.omega_max > 0.0 ? ensemble.omega_max : beta_omega_max(sd);
    const DiscretizedBath bath = discretize_bath(sd, profile, ensemble.modes, omega_max);
    const std::size_t steps = ensemble.steps();
    const std::vector<double> times = path_times(ensemble.dt, steps);
    const std::size_t n_times = times.size();
    const double sigma = std::sqrt(2.0 * diffusion * ensemble.dt);

    McCurve curve;
    curve.times = times;
    curve.trajectories = ensemble.trajectories;
    curve.modes = ensemble.modes;
    curve.model = ensemble.model;

    if (ensemble.model == PhaseModel::PathIntegral) {
        double limit = 1.0 / omega_max;
        if (diffusion > 0.0) limit = std::min(limit, 1.0 / diffusion);
        if (ensemble.dt > 0.1 * limit) {
            std::ostringstream msg;
            msg << "dt = " << ensemble.dt << " exceeds 0.1 * min(1/omega_max, 1/D) = " << 0.1 * limit
                << "; trapezoidal phase integral may be inaccurate";
            curve.warnings.push_back(msg.str());
        }
    }

    const auto n_traj = static_cast<std::size_t>(ensemble.trajectories);
    const std::size_t n_chunks = (n_traj + kChunkTrajectories - 1) / kChunkTrajectories;
    std::vector<Moments> chunks(n_chunks, Moments(0));

    parallel_for(
        n_chunks,
        [&](std::size_t c) {
            Moments m(n_times);
            std::vector<double> phi(n_times);
            std::vector<double> path(n_times);
            const std::size_t first = c * kChunkTrajectories;
            const std::size_t last = std::min(n_traj, first + kChunkTrajectories);
            for (std::size_t traj = first; traj < last; ++traj) {
                std::fill(phi.begin(), phi.end(), 0.0);
                for (std::size_t k = 0; k < bath.modes.size(); ++k) {
                    if (bath.modes[k].amplitude == 0.0) continue;
                    CounterStream rng(ensemble.seed, trajectory_stream(traj, k));
                    fill_path(rng, sigma, path);
                    if (ensemble.model == PhaseModel::FrozenPhase) {
                        add_frozen_mode(bath.modes[k], path, times, phi);
                    } else {
                        add_path_integral_mode(bath.modes[k], path, times, phi);
                    }
                }
                for (std::size_t j = 0; j < n_times; ++j) {
                    const double re = std::cos(phi[j]);
                    const double im = -std::sin(phi[j]);
                    m.re[j] += re;
                    m.im[j] += im;
                    m.re2[j] += re * re;
                    m.im2[j] += im * im;
                    m.reim[j] += re * im;
                }
            }
            chunks[c] = std::move(m);
        },
        ensemble.threads);

    curve.estimates.resize(n_times);
    curve.stderr_abs.resize(n_times);
    const double count = static_cast<double>(n_traj);
    std::vector<double> column(n_chunks);
    auto reduce = [&](std::vector<double> Moments::*field, std::size_t j) {
        for (std::size_t c = 0; c < n_chunks; ++c) column[c] = (chunks[c].*field)[j];
        return pairwise_sum(column) / count;
    };
    for (std::size_t j = 0; j < n_times; ++j) {
        const double mr = reduce(&Moments::re, j);
        const double mi = reduce(&Moments::im, j);
        const double crr = std::max(0.0, reduce(&Moments::re2, j) - mr * mr);
        const double cii = std::max(0.0, reduce(&Moments::im2, j) - mi * mi);
        const double cri = reduce(&Moments::reim, j) - mr * mi;
        curve.estimates[j] = {mr, mi};

        const double modulus = std::hypot(mr, mi);
        double radial_var = 0.5 * (crr + cii);
        if (modulus > 1e-12) {
            const double ur = mr / modulus;
            const double ui = mi / modulus;
            radial_var = std::max(0.0, ur * ur * crr + 2.0 * ur * ui * cri + ui * ui * cii);
        }
        curve.stderr_abs[j] = n_traj > 1 ? std::sqrt(radial_var / (count - 1.0)) : 0.0;
    }
    return curve;
}

McCurve mc_decoherence_factor(const BathConfig& config, const PhaseProfile& profile, const EnsembleConfig& ensemble) {
    config.validate();
    return mc_decoherence_factor(SpectralDensity::power_law(config), config.diffusion, profile, ensemble);
}

}  // namespace randbath
