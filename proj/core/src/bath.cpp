// bath.cpp

#include "randbath/bath.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

// Boost 1.74's pchip.hpp calls isnan unqualified.
using std::isnan;
#include <boost/math/interpolators/pchip.hpp>

#include "randbath/errors.hpp"

namespace randbath {

std::string_view to_string(ProfileKind kind) noexcept {
    switch (kind) {
        case ProfileKind::Linear: return "linear";
        case ProfileKind::Quadratic: return "quadratic";
        case ProfileKind::Custom: return "custom";
    }
    return "unknown";
}

ProfileKind profile_kind_from_string(std::string_view name) {
    if (name == "linear") return ProfileKind::Linear;
    if (name == "quadratic") return ProfileKind::Quadratic;
    if (name == "custom") return ProfileKind::Custom;
    throw ConfigError("profile", "expected one of linear|quadratic|custom, got '" + std::string(name) + "'");
}

void BathConfig::validate() const {
    if (!std::isfinite(gamma) || gamma < 0.0) throw ConfigError("gamma", "must be finite and >= 0");
    if (!std::isfinite(cutoff) || cutoff <= 0.0) throw ConfigError("cutoff", "must be finite and > 0");
    if (!std::isfinite(diffusion) || diffusion < 0.0) throw ConfigError("diffusion", "must be finite and >= 0");
    if (ohmicity < 1) throw ConfigError("ohmicity", "must be an integer >= 1");
    if (!std::isfinite(phase_lambda)) throw ConfigError("phase_lambda", "must be finite");
    if (omega != 1.0) throw ConfigError("omega", "is the unit of frequency and must equal 1");
}

// --------------------------- Spectral density -------------------------------

namespace {

void check_samples(const std::vector<double>& x, const std::vector<double>& y, const char* field) {
    if (x.size() != y.size()) throw ConfigError(field, "abscissa and ordinate counts differ");
    if (x.size() < 4) throw ConfigError(field, "needs at least 4 samples for monotone cubic interpolation");
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!std::isfinite(x[i]) || !std::isfinite(y[i])) throw ConfigError(field, "samples must be finite");
        if (i > 0 && !(x[i] > x[i - 1])) throw ConfigError(field, "abscissas must be strictly increasing");
    }
}

}  // namespace

SpectralDensity SpectralDensity::power_law(double gamma, double cutoff, int ohmicity) {
    if (!std::isfinite(gamma) || gamma < 0.0) throw ConfigError("gamma", "must be finite and >= 0");
    if (!std::isfinite(cutoff) || cutoff <= 0.0) throw ConfigError("cutoff", "must be finite and > 0");
    if (ohmicity < 1) throw ConfigError("ohmicity", "must be an integer >= 1");
    const double prefactor = 4.0 * gamma / std::pow(cutoff, ohmicity + 1);
    return SpectralDensity(PowerLaw{gamma, cutoff, ohmicity, prefactor});
}

SpectralDensity SpectralDensity::power_law(const BathConfig& config) {
    return power_law(config.gamma, config.cutoff, config.ohmicity);
}

SpectralDensity SpectralDensity::tabulated(std::vector<double> omega, std::vector<double> density) {
    check_samples(omega, density, "spectral_density");
    if (omega.front() < 0.0) throw ConfigError("spectral_density", "frequencies must be >= 0");
    for (double v : density) {
        if (v < 0.0) throw ConfigError("spectral_density", "density samples must be >= 0");
    }
    std::vector<double> x = omega;
    auto spline = std::make_shared<boost::math::interpolators::pchip<std::vector<double>>>(std::move(x),
                                                                                          std::move(density));
    const double lo = omega.front();
    const double hi = omega.back();
    auto interpolant = [spline, lo, hi](double w) {
        if (w < lo || w > hi) return 0.0;
        return std::max(0.0, (*spline)(w));
    };
    return SpectralDensity(Tabulated{std::move(omega), std::move(interpolant)});
}

bool SpectralDensity::is_power_law() const noexcept { return std::holds_alternative<PowerLaw>(rep_); }

double SpectralDensity::gamma() const {
    if (!is_power_law()) throw MisuseError("gamma is only defined for the power-law family");
    return std::get<PowerLaw>(rep_).gamma;
}

double SpectralDensity::cutoff() const {
    if (!is_power_law()) throw MisuseError("cutoff is only defined for the power-law family");
    return std::get<PowerLaw>(rep_).cutoff;
}

int SpectralDensity::ohmicity() const {
    if (!is_power_law()) throw MisuseError("ohmicity is only defined for the power-law family");
    return std::get<PowerLaw>(rep_).ohmicity;
}

double SpectralDensity::support_end() const noexcept {
    if (is_power_law()) return std::numeric_limits<double>::infinity();
    return std::get<Tabulated>(rep_).omega.back();
}

const std::vector<double>& SpectralDensity::samples() const noexcept {
    static const std::vector<double> empty;
    if (is_power_law()) return empty;
    return std::get<Tabulated>(rep_).omega;
}

double SpectralDensity::operator()(double omega) const {
    if (!(omega >= 0.0)) throw DomainError("spectral density: frequency must be >= 0");
    if (const auto* p = std::get_if<PowerLaw>(&rep_)) {
        if (omega == 0.0) return 0.0;
        return p->prefactor * std::pow(omega, p->ohmicity) * std::exp(-omega / p->cutoff);
    }
    return std::get<Tabulated>(rep_).interpolant(omega);
}

double spectral_density_eval(const SpectralDensity& sd, double omega) { return sd(omega); }

QuadratureResult spectral_total_weight(const SpectralDensity& sd) {
    if (sd.is_power_law()) {
        QuadratureResult exact;
        exact.value = 4.0 * sd.gamma() * std::tgamma(static_cast<double>(sd.ohmicity()) + 1.0);
        return exact;
    }
    // Integrate each interpolation interval separately: the interpolant is a
    // cubic on each, so GK15 is exact up to rounding.
    const auto& w = sd.samples();
    constexpr double tol = 1e-12;
    const double per_segment_tol = tol / static_cast<double>(w.size());
    QuadratureResult total;
    std::vector<double> parts;
    parts.reserve(w.size());
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        // Allow for the rounding floor of the rule on large densities.
        const double scale = (w[i + 1] - w[i]) * std::max(sd(w[i]), sd(w[i + 1]));
        const double seg_tol = per_segment_tol + 1e3 * std::numeric_limits<double>::epsilon() * scale;
        const QuadratureResult seg =
            integrate_finite([&sd](double x) { return sd(x); }, w[i], w[i + 1], seg_tol);
        parts.push_back(seg.value);
        total.error += seg.error;
        total.subdivisions += seg.subdivisions;
        total.converged = total.converged && seg.converged;
    }
    total.value = pairwise_sum(parts);
    if (!total.converged || !std::isfinite(total.value)) {
        throw ConvergenceError("spectral_total_weight: integral of the tabulated density did not converge",
                               total.value, total.error);
    }
    return total;
}

// ----------------------------- Phase profile --------------------------------

PhaseProfile PhaseProfile::linear(double lambda) {
    PhaseProfile p;
    p.kind_ = ProfileKind::Linear;
    p.lambda_ = lambda;
    p.domain_max_ = std::numeric_limits<double>::infinity();
    return p;
}

PhaseProfile PhaseProfile::quadratic(double lambda) {
    PhaseProfile p;
    p.kind_ = ProfileKind::Quadratic;
    p.lambda_ = lambda;
    p.domain_max_ = std::numeric_limits<double>::infinity();
    return p;
}

PhaseProfile PhaseProfile::custom(std::function<double(double)> theta, double omega_max) {
    if (!theta) throw ConfigError("profile", "custom profile needs a function");
    if (!(omega_max > 0.0)) throw ConfigError("profile", "custom profile domain must be positive");
    PhaseProfile p;
    p.kind_ = ProfileKind::Custom;
    p.domain_max_ = omega_max;
    p.custom_ = std::move(theta);
    return p;
}

PhaseProfile PhaseProfile::tabulated(std::vector<double> omega, std::vector<double> theta) {
    check_samples(omega, theta, "profile");
    if (omega.front() < 0.0) throw ConfigError("profile", "frequencies must be >= 0");
    const double lo = omega.front();
    const double hi = omega.back();
    auto spline =
        std::make_shared<boost::math::interpolators::pchip<std::vector<double>>>(std::move(omega), std::move(theta));
    PhaseProfile p;
    p.kind_ = ProfileKind::Custom;
    p.domain_min_ = lo;
    p.domain_max_ = hi;
    p.custom_ = [spline](double w) { return (*spline)(w); };
    return p;
}

PhaseProfile PhaseProfile::from_config(const BathConfig& config) {
    switch (config.phase_profile) {
        case ProfileKind::Linear: return linear(config.phase_lambda);
        case ProfileKind::Quadratic: return quadratic(config.phase_lambda);
        case ProfileKind::Custom: break;
    }
    throw ConfigError("profile", "a custom profile cannot be built from scalar parameters");
}

double PhaseProfile::operator()(double omega) const {
    switch (kind_) {
        case ProfileKind::Linear: return -lambda_ * omega;
        case ProfileKind::Quadratic: return -lambda_ * omega * omega;
        case ProfileKind::Custom: break;
    }
    if (!(omega >= domain_min_ && omega <= domain_max_)) {
        throw DomainError("phase profile: frequency " + std::to_string(omega) + " outside the tabulated range");
    }
    return custom_(omega);
}

double phase_profile_eval(const PhaseProfile& profile, double omega) { return profile(omega); }

// -------------------------- Phase distribution ------------------------------

PhaseDistribution::PhaseDistribution(double diffusion) : diffusion_(diffusion) {
    if (!std::isfinite(diffusion) || diffusion < 0.0) throw ConfigError("diffusion", "must be finite and >= 0");
}

int PhaseDistribution::terms(double t) const {
    const double dt = diffusion_ * t;
    if (!(dt > 0.0)) return kMaxTerms;
    // Largest m with exp(-m^2 D t) >= eps.
    const double m = std::floor(std::sqrt(-std::log(kSeriesEps) / dt));
    return static_cast<int>(std::min<double>(m, kMaxTerms));
}

bool PhaseDistribution::truncation_warning(double t) const noexcept { return diffusion_ * t < kSmallDtWarning; }

double PhaseDistribution::operator()(double x, double t) const {
    if (!(t > 0.0)) {
        throw DomainError("phase distribution: t = 0 is the delta-function limit P(x,0) = delta(x)");
    }
    if (diffusion_ == 0.0) {
        throw DomainError("phase distribution: D = 0 keeps the delta-function initial condition for all t");
    }
    const double dt = diffusion_ * t;
    const int n = terms(t);
    // Smallest terms first.
    double sum = 0.0;
    for (int m = n; m >= 1; --m) {
        const double md = static_cast<double>(m);
        sum += std::exp(-md * md * dt) * std::cos(md * x);
    }
    return 0.5 * std::numbers::inv_pi + std::numbers::inv_pi * sum;
}

double phase_distribution_eval(const PhaseDistribution& pd, double x, double t) { return pd(x, t); }

}  // namespace randbath
