#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "randbath/numerics.hpp"

using namespace randbath;

TEST_CASE("integrate_semi_infinite: exponential") {
    const auto r = integrate_semi_infinite([](double w) { return std::exp(-w); }, 1e-12, 60.0);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.error <= 1e-12);
}

TEST_CASE("integrate_semi_infinite: Laplace transform of w cos(b w)") {
    // int_0^inf w e^{-w} cos(b w) dw = (1 - b^2) / (1 + b^2)^2
    const double b = 2.0;
    OscillationHint hint;
    hint.period = 2.0 * std::numbers::pi / b;
    const auto r = integrate_semi_infinite([b](double w) { return w * std::exp(-w) * std::cos(b * w); }, 1e-12, 60.0,
                                           hint);
    CHECK(r.converged);
    CHECK(std::abs(r.value - (-3.0 / 25.0)) < 1e-11);
}

TEST_CASE("integrate_semi_infinite: zero integrand is exactly zero") {
    const auto r = integrate_semi_infinite([](double) { return 0.0; }, 1e-10, 60.0);
    CHECK(r.value == 0.0);
    CHECK(r.error == 0.0);
    CHECK(r.converged);
}

TEST_CASE("integrate_semi_infinite: panels respect the oscillation hint") {
    OscillationHint hint;
    hint.period = 0.5;
    const auto r = integrate_semi_infinite([](double w) { return std::exp(-w); }, 1e-6, 10.0, hint);
    // Initial partition alone has 10 / 0.25 = 40 panels.
    CHECK(r.subdivisions >= 40);
}

TEST_CASE("integrate_semi_infinite: budget exhaustion reports best estimate") {
    const auto r = integrate_semi_infinite([](double w) { return std::sin(200.0 * w) * std::exp(-w); }, 1e-14, 60.0, {},
                                           4);
    CHECK_FALSE(r.converged);
    CHECK(std::isfinite(r.value));
    CHECK(r.error > 1e-14);
}

TEST_CASE("integrate_finite: known integrals") {
    const auto a = integrate_finite([](double t) { return std::sin(t) * std::sin(t); }, 0.0, 2.0 * std::numbers::pi,
                                    1e-12);
    CHECK(a.converged);
    CHECK(std::abs(a.value - std::numbers::pi) < 1e-12);

    const auto b = integrate_finite([](double t) { return t * t * t; }, 0.0, 1.0, 1e-14);
    CHECK(std::abs(b.value - 0.25) < 1e-15);

    CHECK_THROWS_AS(integrate_finite([](double t) { return t; }, 1.0, 1.0, 1e-10), std::invalid_argument);
}

TEST_CASE("integrate_finite: tolerance contract under doubled resolution") {
    // Peaked but smooth; the answer at half the tolerance must stay within
    // the error reported at the coarser tolerance.
    auto f = [](double x) { return 1.0 / (1e-3 + x * x); };
    const auto coarse = integrate_finite(f, -1.0, 1.0, 1e-6);
    const auto fine = integrate_finite(f, -1.0, 1.0, 0.5e-6);
    REQUIRE(coarse.converged);
    REQUIRE(fine.converged);
    CHECK(std::abs(coarse.value - fine.value) <= coarse.error);
    const double exact = 2.0 / std::sqrt(1e-3) * std::atan(1.0 / std::sqrt(1e-3));
    CHECK(std::abs(coarse.value - exact) <= coarse.error);
}

TEST_CASE("integrate_finite: linearity and determinism on random smooth integrands") {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    for (int trial = 0; trial < 25; ++trial) {
        const double a1 = coef(gen), a2 = coef(gen), k = 1.0 + std::abs(coef(gen)) * 5.0, alpha = coef(gen);
        auto f = [=](double x) { return a1 * std::cos(k * x) + a2 * x * x; };
        auto g = [=](double x) { return std::exp(-x) * std::sin(3.0 * x + a1); };
        const double tol = 1e-10;
        const auto If = integrate_finite(f, 0.0, 3.0, tol);
        const auto Ig = integrate_finite(g, 0.0, 3.0, tol);
        const auto Icomb = integrate_finite([&](double x) { return alpha * f(x) + g(x); }, 0.0, 3.0, tol);
        CHECK(std::abs(Icomb.value - (alpha * If.value + Ig.value)) <= 2.0 * tol * (1.0 + std::abs(alpha)));
        const auto again = integrate_finite(f, 0.0, 3.0, tol);
        CHECK(again.value == If.value);  // bitwise
        CHECK(again.error == If.error);
    }
}

TEST_CASE("finite differences") {
    const double h = 1e-3;
    CHECK(std::abs(finite_difference_slope([](double t) { return t * t; }, 1.0, h) - 2.0) < 1e-10);
    CHECK(std::abs(finite_difference_slope([](double t) { return std::exp(t); }, 0.0, h) - 1.0) < 1e-10);
    CHECK(std::abs(finite_difference_second([](double x) { return std::sin(x); }, 0.3, h) + std::sin(0.3)) < 1e-7);
    CHECK_THROWS(finite_difference_slope([](double t) { return t; }, 0.0, 0.0));
}

TEST_CASE("pairwise_sum matches exact sums of representable values") {
    std::vector<double> v(1000);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<double>(i);
    CHECK(pairwise_sum(v) == 499500.0);
    CHECK(pairwise_sum(std::span<const double>{}) == 0.0);
}
