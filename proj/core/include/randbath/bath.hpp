// bath.hpp: spectral density, initial-phase profile and diffusive phase
// distribution of the random-phase bath.
//
// All quantities are dimensionless in units of the qubit frequency Omega:
// times are Omega*t, frequencies and rates are divided by Omega.

#pragma once

#include <functional>
#include <memory>
#include <string_view>
#include <variant>
#include <vector>

#include "randbath/numerics.hpp"

namespace randbath {

enum class ProfileKind { Linear, Quadratic, Custom };

std::string_view to_string(ProfileKind kind) noexcept;
ProfileKind profile_kind_from_string(std::string_view name);

// Bath and system parameters. Defaults are the weak-coupling parameter set
// (gamma = 0.5, Lambda = 1, lambda = 1, D = 0.1, ohmic).
struct BathConfig {
    double gamma{0.5};         // dimensionless coupling, >= 0
    double cutoff{1.0};        // Lambda / Omega, > 0
    double diffusion{0.1};     // D / Omega, >= 0
    int ohmicity{1};           // n >= 1
    double phase_lambda{1.0};  // Omega * lambda, any sign
    double omega{1.0};         // fixed unit of frequency
    ProfileKind phase_profile{ProfileKind::Linear};

    // Throws ConfigError naming the first invalid field.
    void validate() const;
};

// --------------------------- Spectral density -------------------------------

// I(w) = (4 gamma / Lambda^2) (w^n / Lambda^(n-1)) exp(-w / Lambda), or a
// tabulated density interpolated with a monotone piecewise cubic (PCHIP)
// and taken as zero outside the sampled range.
class SpectralDensity {
public:
    static SpectralDensity power_law(double gamma, double cutoff, int ohmicity);
    static SpectralDensity power_law(const BathConfig& config);
    static SpectralDensity tabulated(std::vector<double> omega, std::vector<double> density);

    bool is_power_law() const noexcept;
    double gamma() const;
    double cutoff() const;
    int ohmicity() const;

    // Upper end of the support; +inf for the power-law family.
    double support_end() const noexcept;

    // Throws DomainError for negative (or NaN) omega.
    double operator()(double omega) const;

    // Sample abscissas of a tabulated density (empty for power law).
    const std::vector<double>& samples() const noexcept;

private:
    struct PowerLaw {
        double gamma;
        double cutoff;
        int ohmicity;
        double prefactor;  // 4 gamma / Lambda^(n+1)
    };
    struct Tabulated {
        std::vector<double> omega;
        std::function<double(double)> interpolant;
    };

    explicit SpectralDensity(std::variant<PowerLaw, Tabulated> rep) : rep_(std::move(rep)) {}

    std::variant<PowerLaw, Tabulated> rep_;
};

double spectral_density_eval(const SpectralDensity& sd, double omega);

// Integral of I over [0, inf). Exactly 4 gamma n! for the power-law family
// (error 0); adaptive quadrature over the sampled range otherwise. Throws
// ConvergenceError when the tabulated integral does not converge.
QuadratureResult spectral_total_weight(const SpectralDensity& sd);

// ----------------------------- Phase profile --------------------------------

// Initial phases of the bath modes, theta(w).
class PhaseProfile {
public:
    static PhaseProfile linear(double lambda);     // theta = -lambda w
    static PhaseProfile quadratic(double lambda);  // theta = -lambda w^2
    // Arbitrary function valid on [0, omega_max].
    static PhaseProfile custom(std::function<double(double)> theta, double omega_max);
    // PCHIP through (omega_i, theta_i), valid on [omega_0, omega_last].
    static PhaseProfile tabulated(std::vector<double> omega, std::vector<double> theta);
    // Linear or Quadratic from config.phase_lambda; Custom is rejected.
    static PhaseProfile from_config(const BathConfig& config);

    ProfileKind kind() const noexcept { return kind_; }
    double lambda() const noexcept { return lambda_; }
    double domain_min() const noexcept { return domain_min_; }
    double domain_max() const noexcept { return domain_max_; }

    // Throws DomainError outside [domain_min, domain_max].
    double operator()(double omega) const;

private:
    PhaseProfile() = default;

    ProfileKind kind_{ProfileKind::Linear};
    double lambda_{0.0};
    double domain_min_{0.0};
    double domain_max_{0.0};
    std::function<double(double)> custom_;
};

double phase_profile_eval(const PhaseProfile& profile, double omega);

// -------------------------- Phase distribution ------------------------------

// Solution of d_t P = D d_x^2 P on the circle with P(x, 0) = delta(x):
//   P(x, t) = 1/(2 pi) + (1/pi) sum_{m>=1} exp(-m^2 D t) cos(m x).
// The series stops at the first m with exp(-m^2 D t) < series_eps.
class PhaseDistribution {
public:
    static constexpr double kSeriesEps = 1e-12;
    static constexpr int kMaxTerms = 10000;
    static constexpr double kSmallDtWarning = 1e-6;

    explicit PhaseDistribution(double diffusion);

    double diffusion() const noexcept { return diffusion_; }

    // Throws DomainError for t <= 0 (delta-function limit) or D = 0.
    double operator()(double x, double t) const;

    // Number of cosine terms used at time t.
    int terms(double t) const;

    // True when D t is small enough that the capped series may not reach
    // the truncation tolerance.
    bool truncation_warning(double t) const noexcept;

private:
    double diffusion_;
};

double phase_distribution_eval(const PhaseDistribution& pd, double x, double t);

}  // namespace randbath
