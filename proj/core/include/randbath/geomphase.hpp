// geomphase.hpp: non-unitary geometric phase of the dephased qubit over one
// quasi-cycle tau = 2 pi / Omega.
//
// For the initial state cos(theta0/2)|0> + sin(theta0/2)|1> the dominant
// eigenvector of the reduced density matrix has Bloch angle theta_+(t), and
//
//   phi_G = Omega int_0^tau cos^2(theta_+(t)) dt,   phi_U = pi (1 + cos theta0).

#pragma once

#include <optional>
#include <vector>

#include "randbath/bath.hpp"
#include "randbath/dephasing.hpp"

namespace randbath {

struct QubitState {
    double theta0{0.0};  // Bloch polar angle in [0, pi]

    void validate() const;  // throws ConfigError("theta0", ...)
};

struct BlochSnapshot {
    double eps_plus{1.0};  // dominant eigenvalue, in [1/2, 1]
    double cos_theta_plus{1.0};
    double sin_theta_plus{0.0};

    double eps_minus() const noexcept { return 1.0 - eps_plus; }
};

struct GPResult {
    double phi_g{0.0};      // geometric phase, not reduced mod 2 pi
    double phi_u{0.0};      // unitary value pi (1 + cos theta0)
    double delta{0.0};      // phi_g - phi_u
    double tolerance{0.0};  // achieved integrator error estimate
};

inline constexpr double kGeometricPhaseTolerance = 1e-9;

// eps_+ = (1 + sqrt(cos^2 theta0 + sin^2 theta0 F^2)) / 2. Throws DomainError
// for F outside [0, 1].
double eigenvalue_plus(double decoherence, double theta0);

// (cos theta_+, sin theta_+) of the dominant eigenvector. The 0/0 points
// (theta0 = 0, and F = 0 at theta0 <= pi/2) take their limiting values.
BlochSnapshot bloch_angle(double decoherence, double theta0);

double unitary_phase(double theta0);

GPResult geometric_phase(const BetaFunction& beta, double theta0, double tol = kGeometricPhaseTolerance);
GPResult geometric_phase(const BathConfig& config, const PhaseProfile& profile, double theta0,
                         double tol = kGeometricPhaseTolerance);

// First-order-in-gamma estimate of phi_G - phi_U for n = 1 or n = 3 with a
// linear phase profile. Throws MisuseError for other n.
double perturbative_correction(const BathConfig& config, double theta0);
// Coefficient multiplying gamma sin^2(theta0) cos(theta0) above.
double perturbative_coefficient(const BathConfig& config);

enum class Monotonicity { Constant, NonDecreasing, NonIncreasing, NonMonotone };

const char* to_string(Monotonicity m) noexcept;

// Classifies a sequence, treating steps of size <= tol as flat.
Monotonicity classify_monotonicity(const std::vector<double>& values, double tol);

// |delta phi_G| / phi_U over (theta0, gamma). Rows follow theta0_grid,
// columns gamma_grid. Entries with phi_U = 0 (theta0 = pi) are nullopt.
struct GPSurface {
    std::vector<double> theta0;
    std::vector<double> gamma;
    std::vector<std::vector<std::optional<double>>> normalized;
    std::vector<std::vector<double>> delta;            // signed phi_G - phi_U
    std::vector<Monotonicity> gamma_monotonicity;      // of |delta| per theta0 row
    double max_tolerance{0.0};
};

GPSurface gp_surface(const BathConfig& config, const PhaseProfile& profile, const std::vector<double>& theta0_grid,
                     const std::vector<double>& gamma_grid, unsigned threads = 0);

// |delta phi_G| over (theta0, lambda) for the linear profile.
struct LambdaSweep {
    std::vector<double> theta0;
    std::vector<double> lambda;
    std::vector<std::vector<double>> abs_delta;
    std::vector<Monotonicity> lambda_monotonicity;  // per theta0 row
    double max_tolerance{0.0};
};

LambdaSweep gp_lambda_sweep(const BathConfig& config, const std::vector<double>& theta0_grid,
                            const std::vector<double>& lambda_grid, unsigned threads = 0);

}  // namespace randbath
