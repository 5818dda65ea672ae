// geomphase.cpp

#include "randbath/geomphase.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "randbath/errors.hpp"
#include "randbath/parallel.hpp"

namespace randbath {

void QubitState::validate() const {
    if (!(theta0 >= 0.0 && theta0 <= std::numbers::pi)) throw ConfigError("theta0", "must lie in [0, pi]");
}

namespace {

void check_decoherence(double f) {
    if (!(f >= 0.0 && f <= 1.0)) throw DomainError("decoherence factor must lie in [0, 1]");
}

void check_theta0(double theta0) { QubitState{theta0}.validate(); }

}  // namespace

double eigenvalue_plus(double decoherence, double theta0) {
    check_decoherence(decoherence);
    const double c = std::cos(theta0);
    const double s = std::sin(theta0);
    return 0.5 * (1.0 + std::sqrt(c * c + s * s * decoherence * decoherence));
}

BlochSnapshot bloch_angle(double decoherence, double theta0) {
    check_decoherence(decoherence);
    check_theta0(theta0);
    BlochSnapshot snap;
    snap.eps_plus = eigenvalue_plus(decoherence, theta0);

    const double c = std::cos(theta0);
    const double sf = std::sin(theta0) * decoherence;
    const double r = std::sqrt(c * c + sf * sf);

    // eps_+ - cos^2(theta0/2) = (r - c) / 2. For c >= 0 that difference
    // cancels, so use (r - c) = sf^2 / (r + c) and divide numerator and
    // denominator of both quotients by sf / (r + c).
    double num_cos = 0.0;
    double num_sin = 0.0;
    if (c >= 0.0) {
        num_cos = r + c;
        num_sin = sf;
        if (num_cos == 0.0 && num_sin == 0.0) {
            // theta0 = pi/2 with F = 0: limit F -> 0+ of r = F, c = 0.
            num_cos = 1.0;
            num_sin = 1.0;
        }
    } else {
        num_cos = sf;
        num_sin = r - c;
    }
    const double norm = std::hypot(num_cos, num_sin);
    snap.cos_theta_plus = num_cos / norm;
    snap.sin_theta_plus = num_sin / norm;
    return snap;
}

double unitary_phase(double theta0) { return std::numbers::pi * (1.0 + std::cos(theta0)); }

GPResult geometric_phase(const BetaFunction& beta, double theta0, double tol) {
    check_theta0(theta0);
    constexpr double omega = 1.0;
    const double tau = 2.0 * std::numbers::pi / omega;
    auto integrand = [&](double t) {
        const double f = beta.decoherence(t).value;
        const double cp = bloch_angle(f, theta0).cos_theta_plus;
        return omega * cp * cp;
    };
    const QuadratureResult q = integrate_finite(integrand, 0.0, tau, tol);
    if (!q.converged) {
        throw ConvergenceError("geometric phase integral did not reach tolerance", q.value, q.error);
    }
    GPResult result;
    result.phi_g = q.value;
    result.phi_u = unitary_phase(theta0);
    result.delta = result.phi_g - result.phi_u;
    result.tolerance = q.error;
    return result;
}

GPResult geometric_phase(const BathConfig& config, const PhaseProfile& profile, double theta0, double tol) {
    return geometric_phase(BetaFunction(config, profile), theta0, tol);
}

double perturbative_coefficient(const BathConfig& config) {
    const double d = config.diffusion;
    const double cutoff = config.cutoff;
    const double lambda_term = config.omega * std::exp(-2.0 * d * config.phase_lambda);
    switch (config.ohmicity) {
        case 1: return std::numbers::pi + lambda_term * d / (cutoff * cutoff);
        case 3: return 6.0 * std::numbers::pi + lambda_term * d * d * d / (4.0 * std::pow(cutoff, 4));
        default: break;
    }
    throw MisuseError("perturbative correction is only available for n = 1 and n = 3");
}

double perturbative_correction(const BathConfig& config, double theta0) {
    const double coefficient = perturbative_coefficient(config);
    const double s = std::sin(theta0);
    return config.gamma * s * s * std::cos(theta0) * coefficient;
}

const char* to_string(Monotonicity m) noexcept {
    switch (m) {
        case Monotonicity::Constant: return "constant";
        case Monotonicity::NonDecreasing: return "non-decreasing";
        case Monotonicity::NonIncreasing: return "non-increasing";
        case Monotonicity::NonMonotone: return "non-monotone";
    }
    return "unknown";
}

Monotonicity classify_monotonicity(const std::vector<double>& values, double tol) {
    bool rises = false;
    bool falls = false;
    for (std::size_t i = 1; i < values.size(); ++i) {
        const double step = values[i] - values[i - 1];
        if (step > tol) rises = true;
        if (step < -tol) falls = true;
    }
    if (rises && falls) return Monotonicity::NonMonotone;
    if (rises) return Monotonicity::NonDecreasing;
    if (falls) return Monotonicity::NonIncreasing;
    return Monotonicity::Constant;
}

GPSurface gp_surface(const BathConfig& config, const PhaseProfile& profile, const std::vector<double>& theta0_grid,
                     const std::vector<double>& gamma_grid, unsigned threads) {
    for (double th : theta0_grid) check_theta0(th);
    GPSurface surface;
    surface.theta0 = theta0_grid;
    surface.gamma = gamma_grid;
    const std::size_t rows = theta0_grid.size();
    const std::size_t cols = gamma_grid.size();
    surface.normalized.assign(rows, std::vector<std::optional<double>>(cols));
    surface.delta.assign(rows, std::vector<double>(cols, 0.0));
    std::vector<double> tolerances(rows * cols, 0.0);

    // One BetaFunction per gamma column, shared across theta0 rows.
    std::vector<BetaFunction> betas;
    betas.reserve(cols);
    for (double g : gamma_grid) {
        BathConfig c = config;
        c.gamma = g;
        betas.emplace_back(c, profile);
    }

    parallel_for(
        rows * cols,
        [&](std::size_t idx) {
            const std::size_t i = idx / cols;
            const std::size_t j = idx % cols;
            const GPResult gp = geometric_phase(betas[j], theta0_grid[i]);
            surface.delta[i][j] = gp.delta;
            tolerances[idx] = gp.tolerance;
            if (gp.phi_u > 1e-12) surface.normalized[i][j] = std::abs(gp.delta) / gp.phi_u;
        },
        threads);

    surface.max_tolerance = tolerances.empty() ? 0.0 : *std::max_element(tolerances.begin(), tolerances.end());
    for (std::size_t i = 0; i < rows; ++i) {
        std::vector<double> row(cols);
        for (std::size_t j = 0; j < cols; ++j) row[j] = std::abs(surface.delta[i][j]);
        surface.gamma_monotonicity.push_back(classify_monotonicity(row, 2.0 * surface.max_tolerance));
    }
    return surface;
}

LambdaSweep gp_lambda_sweep(const BathConfig& config, const std::vector<double>& theta0_grid,
                            const std::vector<double>& lambda_grid, unsigned threads) {
    for (double th : theta0_grid) check_theta0(th);
    LambdaSweep sweep;
    sweep.theta0 = theta0_grid;
    sweep.lambda = lambda_grid;
    const std::size_t rows = theta0_grid.size();
    const std::size_t cols = lambda_grid.size();
    sweep.abs_delta.assign(rows, std::vector<double>(cols, 0.0));
    std::vector<double> tolerances(rows * cols, 0.0);

    std::vector<BetaFunction> betas;
    betas.reserve(cols);
    for (double lambda : lambda_grid) {
        BathConfig c = config;
        c.phase_profile = ProfileKind::Linear;
        c.phase_lambda = lambda;
        betas.emplace_back(c);
    }

    parallel_for(
        rows * cols,
        [&](std::size_t idx) {
            const std::size_t i = idx / cols;
            const std::size_t j = idx % cols;
            const GPResult gp = geometric_phase(betas[j], theta0_grid[i]);
            sweep.abs_delta[i][j] = std::abs(gp.delta);
            tolerances[idx] = gp.tolerance;
        },
        threads);

    sweep.max_tolerance = tolerances.empty() ? 0.0 : *std::max_element(tolerances.begin(), tolerances.end());
    for (const auto& row : sweep.abs_delta) {
        sweep.lambda_monotonicity.push_back(classify_monotonicity(row, 2.0 * sweep.max_tolerance));
    }
    return sweep;
}

}  // namespace randbath
