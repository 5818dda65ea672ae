// dephasing.hpp: decoherence factor |F(t)| = exp(-beta(t)) of the qubit
//
//   beta(t) = 1/4 int_0^inf dw I(w) [1 - e^{-2Dt} + (e^{-2Dt} - e^{-4Dt}) cos(2(w t + theta(w)))]
//
// evaluated in closed form for the ohmic (n = 1) and supraohmic (n = 3)
// densities with a linear phase profile, by adaptive quadrature otherwise.

#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "randbath/bath.hpp"
#include "randbath/numerics.hpp"

namespace randbath {

enum class Method { ClosedForm, Quadrature, MonteCarlo };

std::string_view to_string(Method method) noexcept;

struct DecoherenceCurve {
    std::vector<double> times;   // strictly increasing, Omega t
    std::vector<double> values;  // |F(t)| in [0, 1]
    std::vector<double> errors;  // absolute error estimate per point
    Method method{Method::ClosedForm};
};

struct DecoherencePoint {
    double value{1.0};
    double error{0.0};
    Method method{Method::ClosedForm};
};

inline constexpr double kBetaTolerance = 1e-10;

// Upper integration limit Lambda * max(60, 40 + 10 n) for the power-law
// family, end of the sampled range for a tabulated density.
double beta_omega_max(const SpectralDensity& sd);

// Integrand of beta at frequency omega and time t.
double beta_integrand(double omega, double t, const SpectralDensity& sd, double diffusion,
                      const PhaseProfile& profile);
double beta_integrand(double omega, double t, const BathConfig& config, const PhaseProfile& profile);

// Adaptive quadrature of beta(t) to absolute tolerance `tol`. Throws
// ConvergenceError (carrying the best estimate) when the panel budget runs out.
QuadratureResult beta_quadrature(double t, const SpectralDensity& sd, double diffusion,
                                 const PhaseProfile& profile, double tol = kBetaTolerance);
QuadratureResult beta_quadrature(double t, const BathConfig& config, const PhaseProfile& profile,
                                 double tol = kBetaTolerance);

// Closed-form exponents. Require n = 1 (resp. n = 3) and a linear profile in
// `config`; otherwise throw MisuseError.
double beta_ohmic_closed(double t, const BathConfig& config);
double beta_supra_closed(double t, const BathConfig& config);

double decoherence_ohmic_closed(double t, const BathConfig& config);
double decoherence_supra_closed(double t, const BathConfig& config);

// beta(t) and |F(t)| with automatic choice of method.
class BetaFunction {
public:
    // Power-law density built from `config`; `profile` overrides
    // config.phase_profile / phase_lambda.
    BetaFunction(const BathConfig& config, PhaseProfile profile);
    explicit BetaFunction(const BathConfig& config);
    BetaFunction(SpectralDensity sd, double diffusion, PhaseProfile profile);

    Method method() const noexcept { return closed_ ? Method::ClosedForm : Method::Quadrature; }

    // value and absolute error of beta(t); t >= 0.
    QuadratureResult beta(double t) const;
    DecoherencePoint decoherence(double t) const;

    const SpectralDensity& spectral_density() const noexcept { return sd_; }
    const PhaseProfile& profile() const noexcept { return profile_; }
    double diffusion() const noexcept { return diffusion_; }

private:
    SpectralDensity sd_;
    double diffusion_;
    PhaseProfile profile_;
    BathConfig closed_config_{};
    bool closed_{false};
};

// Evenly spaced grid start, start + step, ... up to stop (inclusive within
// half a step).
std::vector<double> make_time_grid(double start, double stop, double step);

inline constexpr double kDefaultGridStop = 10.0;
inline constexpr double kDefaultGridStep = 0.01;

DecoherencePoint decoherence_factor(double t, const BathConfig& config, const PhaseProfile& profile);
DecoherenceCurve decoherence_factor(const std::vector<double>& times, const BathConfig& config,
                                    const PhaseProfile& profile, unsigned threads = 0);
DecoherenceCurve decoherence_factor(const std::vector<double>& times, const BetaFunction& beta,
                                    unsigned threads = 0);

struct AsymptoticFactor {
    double value{1.0};
    bool decays{true};  // false when D = 0: the bath never dephases
};

// |F(t -> inf)| = exp(-int I / 4), e.g. exp(-gamma n!) for the power-law family.
AsymptoticFactor asymptotic_factor(const BathConfig& config);
AsymptoticFactor asymptotic_factor(const SpectralDensity& sd, double diffusion);

struct Dip {
    double time{0.0};
    double value{0.0};
    double depth{0.0};  // recoherence height above the minimum
    std::size_t index{0};
};

// Deepest strict local minimum of |F| whose depth exceeds twice the local
// per-point error, or nullopt when there is none. Requires >= 3 points.
std::optional<Dip> find_dip(const DecoherenceCurve& curve);

}  // namespace randbath
