// dephasing.cpp

#include "randbath/dephasing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "randbath/errors.hpp"
#include "randbath/parallel.hpp"

namespace randbath {

std::string_view to_string(Method method) noexcept {
    switch (method) {
        case Method::ClosedForm: return "closed-form";
        case Method::Quadrature: return "quadrature";
        case Method::MonteCarlo: return "monte-carlo";
    }
    return "unknown";
}

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// 1 - e^{-2Dt} and e^{-2Dt} - e^{-4Dt}
struct DiffusionWeights {
    double constant;
    double oscillating;
};

DiffusionWeights diffusion_weights(double diffusion, double t) {
    const double decay = std::exp(-2.0 * diffusion * t);
    const double one_minus = -std::expm1(-2.0 * diffusion * t);
    return {one_minus, decay * one_minus};
}

void require_closed(const BathConfig& config, int n, const char* what) {
    if (config.ohmicity != n) {
        throw MisuseError(std::string(what) + ": closed form requires ohmicity n = " + std::to_string(n));
    }
    if (config.phase_profile != ProfileKind::Linear) {
        throw MisuseError(std::string(what) + ": closed form requires the linear phase profile");
    }
}

void require_time(double t) {
    if (!(t >= 0.0)) throw DomainError("time must be >= 0");
}

}  // namespace

double beta_omega_max(const SpectralDensity& sd) {
    if (!sd.is_power_law()) return sd.support_end();
    const double n = sd.ohmicity();
    return sd.cutoff() * std::max(60.0, 40.0 + 10.0 * n);
}

double beta_integrand(double omega, double t, const SpectralDensity& sd, double diffusion,
                      const PhaseProfile& profile) {
    const DiffusionWeights w = diffusion_weights(diffusion, t);
    if (w.constant == 0.0) return 0.0;
    const double density = sd(omega);
    if (density == 0.0) return 0.0;
    const double phase = 2.0 * (omega * t + profile(omega));
    return 0.25 * density * (w.constant + w.oscillating * std::cos(phase));
}

double beta_integrand(double omega, double t, const BathConfig& config, const PhaseProfile& profile) {
    return beta_integrand(omega, t, SpectralDensity::power_law(config), config.diffusion, profile);
}

QuadratureResult beta_quadrature(double t, const SpectralDensity& sd, double diffusion,
                                 const PhaseProfile& profile, double tol) {
    require_time(t);
    const DiffusionWeights w = diffusion_weights(diffusion, t);
    if (w.constant == 0.0) return QuadratureResult{};  // t = 0 or D = 0: integrand vanishes

    // cos(2 w t + 2 theta(w)) has period pi / t in w.
    OscillationHint hint;
    if (t > 0.0) hint.period = std::numbers::pi / t;
    if (profile.kind() == ProfileKind::Quadratic && profile.lambda() != 0.0) {
        const double lambda = std::abs(profile.lambda());
        hint.width_cap = [lambda](double left) {
            return left > 0.0 ? std::numbers::pi / (2.0 * lambda * left) : std::numeric_limits<double>::infinity();
        };
    }

    const double omega_max = beta_omega_max(sd);
    const double weight_c = 0.25 * w.constant;
    const double weight_o = 0.25 * w.oscillating;
    auto integrand = [&](double omega) {
        const double density = sd(omega);
        if (density == 0.0) return 0.0;
        return density * (weight_c + weight_o * std::cos(2.0 * (omega * t + profile(omega))));
    };
    const QuadratureResult result = integrate_semi_infinite(integrand, tol, omega_max, hint);
    if (!result.converged) {
        throw ConvergenceError("beta quadrature did not reach tolerance at t = " + std::to_string(t), result.value,
                               result.error);
    }
    return result;
}

QuadratureResult beta_quadrature(double t, const BathConfig& config, const PhaseProfile& profile, double tol) {
    return beta_quadrature(t, SpectralDensity::power_law(config), config.diffusion, profile, tol);
}

double beta_ohmic_closed(double t, const BathConfig& config) {
    require_closed(config, 1, "decoherence_ohmic_closed");
    require_time(t);
    const DiffusionWeights w = diffusion_weights(config.diffusion, t);
    const double u = config.cutoff * (t - config.phase_lambda);
    const double x2 = 4.0 * u * u;
    const double shape = (1.0 - x2) / ((1.0 + x2) * (1.0 + x2));
    return config.gamma * (w.constant + w.oscillating * shape);
}

double beta_supra_closed(double t, const BathConfig& config) {
    require_closed(config, 3, "decoherence_supra_closed");
    require_time(t);
    const DiffusionWeights w = diffusion_weights(config.diffusion, t);
    const double u = config.cutoff * (t - config.phase_lambda);
    const double u2 = u * u;
    const double x2 = 4.0 * u2;
    const double denom = (1.0 + x2) * (1.0 + x2) * (1.0 + x2) * (1.0 + x2);
    const double shape = (1.0 - 24.0 * u2 + 16.0 * u2 * u2) / denom;
    return 6.0 * config.gamma * (w.constant + w.oscillating * shape);
}

double decoherence_ohmic_closed(double t, const BathConfig& config) {
    return std::exp(-beta_ohmic_closed(t, config));
}

double decoherence_supra_closed(double t, const BathConfig& config) {
    return std::exp(-beta_supra_closed(t, config));
}

// ------------------------------ BetaFunction --------------------------------

BetaFunction::BetaFunction(const BathConfig& config, PhaseProfile profile)
    : sd_(SpectralDensity::power_law(config)), diffusion_(config.diffusion), profile_(std::move(profile)) {
    config.validate();
    if (profile_.kind() == ProfileKind::Linear && (config.ohmicity == 1 || config.ohmicity == 3)) {
        closed_ = true;
        closed_config_ = config;
        closed_config_.phase_profile = ProfileKind::Linear;
        closed_config_.phase_lambda = profile_.lambda();
    }
}

BetaFunction::BetaFunction(const BathConfig& config) : BetaFunction(config, PhaseProfile::from_config(config)) {}

BetaFunction::BetaFunction(SpectralDensity sd, double diffusion, PhaseProfile profile)
    : sd_(std::move(sd)), diffusion_(diffusion), profile_(std::move(profile)) {
    if (!std::isfinite(diffusion) || diffusion < 0.0) throw ConfigError("diffusion", "must be finite and >= 0");
    if (sd_.is_power_law() && profile_.kind() == ProfileKind::Linear &&
        (sd_.ohmicity() == 1 || sd_.ohmicity() == 3)) {
        closed_ = true;
        closed_config_.gamma = sd_.gamma();
        closed_config_.cutoff = sd_.cutoff();
        closed_config_.ohmicity = sd_.ohmicity();
        closed_config_.diffusion = diffusion;
        closed_config_.phase_lambda = profile_.lambda();
        closed_config_.phase_profile = ProfileKind::Linear;
    }
}

QuadratureResult BetaFunction::beta(double t) const {
    if (!closed_) return beta_quadrature(t, sd_, diffusion_, profile_);
    QuadratureResult r;
    r.value = closed_config_.ohmicity == 1 ? beta_ohmic_closed(t, closed_config_)
                                           : beta_supra_closed(t, closed_config_);
    // Rounding of a handful of exp/expm1 evaluations.
    r.error = 8.0 * kEps * (1.0 + std::abs(r.value));
    r.subdivisions = 0;
    return r;
}

DecoherencePoint BetaFunction::decoherence(double t) const {
    const QuadratureResult b = beta(t);
    DecoherencePoint p;
    p.method = method();
    p.value = std::min(1.0, std::exp(-b.value));
    p.error = p.value * b.error + kEps * p.value;
    if (t == 0.0) {
        p.value = 1.0;
        p.error = 0.0;
    }
    return p;
}

// -------------------------------- Curves ------------------------------------

std::vector<double> make_time_grid(double start, double stop, double step) {
    if (!(step > 0.0) || !std::isfinite(step)) throw ConfigError("grid", "step must be positive");
    if (!(stop >= start) || !std::isfinite(start) || !std::isfinite(stop)) {
        throw ConfigError("grid", "requires start <= stop");
    }
    const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 0.5));
    std::vector<double> grid(n + 1);
    // start + i*step rather than accumulation keeps the grid exact at i*step.
    for (std::size_t i = 0; i <= n; ++i) grid[i] = start + static_cast<double>(i) * step;
    return grid;
}

DecoherencePoint decoherence_factor(double t, const BathConfig& config, const PhaseProfile& profile) {
    return BetaFunction(config, profile).decoherence(t);
}

DecoherenceCurve decoherence_factor(const std::vector<double>& times, const BetaFunction& beta, unsigned threads) {
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!(times[i] >= 0.0)) throw DomainError("decoherence_factor: times must be >= 0");
        if (i > 0 && !(times[i] > times[i - 1])) {
            throw DomainError("decoherence_factor: times must be strictly increasing");
        }
    }
    DecoherenceCurve curve;
    curve.method = beta.method();
    curve.times = times;
    curve.values.resize(times.size());
    curve.errors.resize(times.size());
    parallel_for(
        times.size(),
        [&](std::size_t i) {
            const DecoherencePoint p = beta.decoherence(times[i]);
            curve.values[i] = p.value;
            curve.errors[i] = p.error;
        },
        threads);
    return curve;
}

DecoherenceCurve decoherence_factor(const std::vector<double>& times, const BathConfig& config,
                                    const PhaseProfile& profile, unsigned threads) {
    return decoherence_factor(times, BetaFunction(config, profile), threads);
}

AsymptoticFactor asymptotic_factor(const SpectralDensity& sd, double diffusion) {
    if (diffusion == 0.0) return AsymptoticFactor{1.0, false};
    return AsymptoticFactor{std::exp(-0.25 * spectral_total_weight(sd).value), true};
}

AsymptoticFactor asymptotic_factor(const BathConfig& config) {
    config.validate();
    return asymptotic_factor(SpectralDensity::power_law(config), config.diffusion);
}

std::optional<Dip> find_dip(const DecoherenceCurve& curve) {
    const auto& f = curve.values;
    const std::size_t n = f.size();
    if (n < 3) throw std::invalid_argument("find_dip: curve needs at least 3 points");

    // Running maxima from each side give the recoherence height of every
    // candidate minimum without a quadratic scan.
    std::vector<std::size_t> left_peak(n), right_peak(n);
    left_peak[0] = 0;
    for (std::size_t i = 1; i < n; ++i) left_peak[i] = f[i] > f[left_peak[i - 1]] ? i : left_peak[i - 1];
    right_peak[n - 1] = n - 1;
    for (std::size_t i = n - 1; i-- > 0;) right_peak[i] = f[i] > f[right_peak[i + 1]] ? i : right_peak[i + 1];

    auto err = [&curve](std::size_t i) { return i < curve.errors.size() ? curve.errors[i] : 0.0; };

    std::optional<Dip> best;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (!(f[i] < f[i - 1] && f[i] < f[i + 1])) continue;
        const std::size_t lp = left_peak[i - 1];
        const std::size_t rp = right_peak[i + 1];
        const std::size_t peak = f[lp] < f[rp] ? lp : rp;
        const double depth = f[peak] - f[i];
        const double threshold = 2.0 * std::max(err(i), err(peak));
        if (!(depth > threshold)) continue;
        if (!best || depth > best->depth) best = Dip{curve.times[i], f[i], depth, i};
    }
    return best;
}

}  // namespace randbath
