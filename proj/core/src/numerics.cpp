// numerics.cpp: Gauss-Kronrod adaptive quadrature and finite differences

#include "randbath/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

namespace randbath {

namespace {

// 15-point Kronrod abscissas (positive half, last is the centre) and weights,
// with the embedded 7-point Gauss weights for xgk[1], xgk[3], xgk[5], xgk[7].
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a;
    double b;
    double value;
    double error;
};

Panel gauss_kronrod_15(const Integrand& f, double a, double b) {
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    std::array<double, 7> f1{};
    std::array<double, 7> f2{};
    const double fc = f(centre);
    double result_gauss = fc * kWg[3];
    double result_kronrod = fc * kWgk[7];
    double result_abs = std::abs(result_kronrod);

    for (int j = 0; j < 3; ++j) {
        const int jtw = 2 * j + 1;
        const double dx = half * kXgk[jtw];
        const double lo = f(centre - dx);
        const double hi = f(centre + dx);
        f1[jtw] = lo;
        f2[jtw] = hi;
        result_gauss += kWg[j] * (lo + hi);
        result_kronrod += kWgk[jtw] * (lo + hi);
        result_abs += kWgk[jtw] * (std::abs(lo) + std::abs(hi));
    }
    for (int j = 0; j < 4; ++j) {
        const int jtwm1 = 2 * j;
        const double dx = half * kXgk[jtwm1];
        const double lo = f(centre - dx);
        const double hi = f(centre + dx);
        f1[jtwm1] = lo;
        f2[jtwm1] = hi;
        result_kronrod += kWgk[jtwm1] * (lo + hi);
        result_abs += kWgk[jtwm1] * (std::abs(lo) + std::abs(hi));
    }

    const double mean = result_kronrod * 0.5;
    double result_asc = kWgk[7] * std::abs(fc - mean);
    for (int j = 0; j < 7; ++j) {
        result_asc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
    }

    const double abs_half = std::abs(half);
    result_kronrod *= half;
    result_abs *= abs_half;
    result_asc *= abs_half;
    double error = std::abs((result_kronrod - result_gauss * half));

    // QUADPACK error scaling: the raw |K15 - G7| grossly overestimates the
    // Kronrod error on smooth panels.
    if (result_asc != 0.0 && error != 0.0) {
        error = result_asc * std::min(1.0, std::pow(200.0 * error / result_asc, 1.5));
    }
    constexpr double eps = std::numeric_limits<double>::epsilon();
    constexpr double tiny = std::numeric_limits<double>::min();
    if (result_abs > tiny / (50.0 * eps)) {
        error = std::max(50.0 * eps * result_abs, error);
    }
    return Panel{a, b, result_kronrod, error};
}

QuadratureResult refine(const Integrand& f, std::vector<Panel> panels, double tol, int max_panels) {
    auto worse = [&panels](std::size_t lhs, std::size_t rhs) {
        if (panels[lhs].error != panels[rhs].error) {
            return panels[lhs].error < panels[rhs].error;
        }
        return panels[lhs].a > panels[rhs].a;
    };
    std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(worse)> queue(worse);

    double total_error = 0.0;
    for (std::size_t i = 0; i < panels.size(); ++i) {
        total_error += panels[i].error;
        queue.push(i);
    }

    while (total_error > tol && static_cast<int>(panels.size()) < max_panels && !queue.empty()) {
        const std::size_t worst = queue.top();
        queue.pop();
        const Panel p = panels[worst];
        const double mid = 0.5 * (p.a + p.b);
        if (!(mid > p.a && mid < p.b)) {
            // Panel cannot be split further in double precision.
            continue;
        }
        const Panel left = gauss_kronrod_15(f, p.a, mid);
        const Panel right = gauss_kronrod_15(f, mid, p.b);
        panels[worst] = left;
        panels.push_back(right);
        queue.push(worst);
        queue.push(panels.size() - 1);

        // Recompute rather than update incrementally so the total does not
        // accumulate cancellation error over thousands of bisections.
        total_error = 0.0;
        for (const Panel& q : panels) total_error += q.error;
    }

    std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
    std::vector<double> values;
    values.reserve(panels.size());
    double error = 0.0;
    for (const Panel& p : panels) {
        values.push_back(p.value);
        error += p.error;
    }

    QuadratureResult result;
    result.value = pairwise_sum(values);
    result.error = error;
    result.subdivisions = static_cast<int>(panels.size());
    result.converged = error <= tol;
    return result;
}

}  // namespace

QuadratureResult integrate_finite(const Integrand& f, double a, double b, double tol, int max_panels) {
    if (!(a < b)) throw std::invalid_argument("integrate_finite: requires a < b");
    if (!(tol > 0.0)) throw std::invalid_argument("integrate_finite: tolerance must be positive");
    std::vector<Panel> panels;
    panels.reserve(static_cast<std::size_t>(std::max(1, std::min(max_panels, 1024))));
    panels.push_back(gauss_kronrod_15(f, a, b));
    return refine(f, std::move(panels), tol, std::max(1, max_panels));
}

QuadratureResult integrate_semi_infinite(const Integrand& f, double tol, double omega_max,
                                         const OscillationHint& hint, int max_panels) {
    if (!(omega_max > 0.0)) throw std::invalid_argument("integrate_semi_infinite: omega_max must be positive");
    if (!(tol > 0.0)) throw std::invalid_argument("integrate_semi_infinite: tolerance must be positive");
    max_panels = std::max(1, max_panels);

    const double half_period =
        (std::isfinite(hint.period) && hint.period > 0.0) ? 0.5 * hint.period : omega_max;
    // Floor on the initial panel width so a pathological cap cannot exhaust
    // the budget before refinement starts.
    const double min_width = 2.0 * omega_max / max_panels;

    std::vector<double> edges{0.0};
    while (edges.back() < omega_max) {
        const double left = edges.back();
        double width = half_period;
        if (hint.width_cap) {
            const double cap = hint.width_cap(left);
            if (std::isfinite(cap) && cap > 0.0) width = std::min(width, cap);
        }
        width = std::max(width, min_width);
        const double right = std::min(omega_max, left + width);
        // Avoid a sliver as the last panel.
        edges.push_back(omega_max - right < 1e-3 * width ? omega_max : right);
    }

    std::vector<Panel> panels;
    panels.reserve(edges.size() - 1);
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        panels.push_back(gauss_kronrod_15(f, edges[i], edges[i + 1]));
    }
    const int budget = std::max(max_panels, static_cast<int>(panels.size()));
    return refine(f, std::move(panels), tol, budget);
}

double finite_difference_slope(const Integrand& f, double t0, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("finite_difference_slope: step must be positive");
    const double coarse = (f(t0 + h) - f(t0 - h)) / (2.0 * h);
    const double hh = 0.5 * h;
    const double fine = (f(t0 + hh) - f(t0 - hh)) / (2.0 * hh);
    return (4.0 * fine - coarse) / 3.0;
}

double finite_difference_second(const Integrand& f, double x0, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("finite_difference_second: step must be positive");
    const double f0 = f(x0);
    const double coarse = (f(x0 + h) - 2.0 * f0 + f(x0 - h)) / (h * h);
    const double hh = 0.5 * h;
    const double fine = (f(x0 + hh) - 2.0 * f0 + f(x0 - hh)) / (hh * hh);
    return (4.0 * fine - coarse) / 3.0;
}

double pairwise_sum(std::span<const double> values) {
    constexpr std::size_t kBlock = 8;
    if (values.size() <= kBlock) {
        double s = 0.0;
        for (double v : values) s += v;
        return s;
    }
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace randbath
