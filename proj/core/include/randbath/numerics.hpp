// numerics.hpp: deterministic adaptive quadrature and finite differences

#pragma once

#include <functional>
#include <span>

namespace randbath {

struct QuadratureResult {
    double value{0.0};
    double error{0.0};     // absolute error estimate
    int subdivisions{0};   // panels in the final partition
    bool converged{true};  // converged implies error <= requested tolerance
};

using Integrand = std::function<double(double)>;

inline constexpr int kMaxPanels = 10000;

// Adaptive Gauss-Kronrod (7/15) on [a, b] with global bisection of the worst
// panel until the summed error estimate drops below `tol` or the panel budget
// is exhausted. Requires a < b.
QuadratureResult integrate_finite(const Integrand& f, double a, double b, double tol,
                                  int max_panels = kMaxPanels);

// Panel-width limits for oscillatory integrands.
struct OscillationHint {
    // Period of the oscillation in the integration variable; panels are no
    // wider than half of it. Zero (or non-finite) disables the limit.
    double period{0.0};
    // Optional extra cap on the width of a panel starting at a given left edge.
    std::function<double(double)> width_cap{};
};

// Integral over [0, inf) of an integrand that is negligible beyond
// `omega_max`. The initial partition respects `hint`; refinement then
// proceeds as in integrate_finite.
QuadratureResult integrate_semi_infinite(const Integrand& f, double tol, double omega_max,
                                         const OscillationHint& hint = {},
                                         int max_panels = kMaxPanels);

// Central difference (f(t0+h) - f(t0-h)) / 2h with one Richardson step
// (h and h/2), so the truncation error is O(h^4).
double finite_difference_slope(const Integrand& f, double t0, double h);

// Second derivative by the three-point stencil with one Richardson step.
double finite_difference_second(const Integrand& f, double x0, double h);

// Pairwise (cascade) summation; the result depends only on the input order.
double pairwise_sum(std::span<const double> values);

}  // namespace randbath
