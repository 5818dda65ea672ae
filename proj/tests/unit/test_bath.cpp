#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "randbath/bath.hpp"
#include "randbath/errors.hpp"
#include "randbath/numerics.hpp"

using namespace randbath;

TEST_CASE("spectral density: closed-formula values") {
    CHECK(spectral_density_eval(SpectralDensity::power_law(1.0, 1.0, 1), 0.0) == 0.0);
    CHECK(spectral_density_eval(SpectralDensity::power_law(1.0, 1.0, 1), 1.0) ==
          doctest::Approx(4.0 * std::exp(-1.0)).epsilon(1e-15));
    CHECK(spectral_density_eval(SpectralDensity::power_law(1.0, 2.0, 3), 2.0) ==
          doctest::Approx(2.0 * std::exp(-1.0)).epsilon(1e-15));
    CHECK_THROWS_AS(SpectralDensity::power_law(1.0, 1.0, 1)(-1e-9), DomainError);
    CHECK_THROWS_AS(SpectralDensity::power_law(-1.0, 1.0, 1), ConfigError);
    CHECK_THROWS_AS(SpectralDensity::power_law(1.0, 0.0, 1), ConfigError);
    CHECK_THROWS_AS(SpectralDensity::power_law(1.0, 1.0, 0), ConfigError);
}

TEST_CASE("spectral density: nonnegative for random valid configs") {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const double gamma = 5.0 * unit(gen);
        const double cutoff = 0.05 + 10.0 * unit(gen);
        const int n = 1 + static_cast<int>(6 * unit(gen));
        const auto sd = SpectralDensity::power_law(gamma, cutoff, n);
        for (int k = 0; k < 50; ++k) {
            const double w = 80.0 * cutoff * unit(gen);
            const double v = sd(w);
            CHECK(v >= 0.0);
            CHECK(std::isfinite(v));
        }
    }
}

TEST_CASE("spectral total weight: 4 gamma n!") {
    CHECK(spectral_total_weight(SpectralDensity::power_law(0.5, 1.0, 1)).value == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(spectral_total_weight(SpectralDensity::power_law(1.0, 1.0, 3)).value == doctest::Approx(24.0).epsilon(1e-15));
    CHECK(spectral_total_weight(SpectralDensity::power_law(0.0, 1.0, 1)).value == 0.0);

    // Cross-check the Gamma-function identity against quadrature for several
    // (n, Lambda).
    for (int n : {1, 2, 3, 4}) {
        for (double cutoff : {0.5, 1.0, 2.5}) {
            const auto sd = SpectralDensity::power_law(0.7, cutoff, n);
            const auto q = integrate_semi_infinite([&sd](double w) { return sd(w); }, 1e-13,
                                                   cutoff * (60.0 + 10.0 * n));
            const double exact = spectral_total_weight(sd).value;
            CHECK(std::abs(q.value - exact) / exact < 1e-10);
        }
    }
}

TEST_CASE("tabulated spectral density") {
    std::vector<double> w{0.0, 1.0, 2.0, 3.0, 4.0, 5.0};
    std::vector<double> y{0.0, 1.0, 0.2, 0.0, 0.8, 0.0};
    const auto sd = SpectralDensity::tabulated(w, y);
    CHECK_FALSE(sd.is_power_law());
    CHECK(sd.support_end() == 5.0);
    for (std::size_t i = 0; i < w.size(); ++i) CHECK(sd(w[i]) == doctest::Approx(y[i]).epsilon(1e-14));
    CHECK(sd(5.5) == 0.0);
    // Monotone interpolation never dips below zero between zero samples.
    for (double x = 0.0; x <= 5.0; x += 0.01) CHECK(sd(x) >= 0.0);
    const auto weight = spectral_total_weight(sd);
    CHECK(weight.converged);
    CHECK(weight.value > 0.0);
    CHECK(weight.value < 5.0);
    CHECK_THROWS_AS(sd.gamma(), MisuseError);

    CHECK_THROWS_AS(SpectralDensity::tabulated({0.0, 1.0, 2.0}, {0.0, 1.0, 0.0}), ConfigError);
    CHECK_THROWS_AS(SpectralDensity::tabulated({0.0, 2.0, 1.0, 3.0}, {0.0, 1.0, 0.0, 1.0}), ConfigError);
    CHECK_THROWS_AS(SpectralDensity::tabulated({0.0, 1.0, 2.0, 3.0}, {0.0, -1.0, 0.0, 1.0}), ConfigError);
    CHECK_THROWS_AS(SpectralDensity::tabulated({0.0, 1.0, 2.0, 3.0}, {0.0, NAN, 0.0, 1.0}), ConfigError);
}

TEST_CASE("tabulated density reproduces the power-law weight when finely sampled") {
    const auto exact = SpectralDensity::power_law(1.0, 1.0, 1);
    std::vector<double> w, y;
    for (double x = 0.0; x <= 60.0; x += 0.05) {
        w.push_back(x);
        y.push_back(exact(x));
    }
    const auto tab = SpectralDensity::tabulated(w, y);
    // PCHIP is second-order accurate near the maximum.
    CHECK(std::abs(spectral_total_weight(tab).value - 4.0) < 1e-4);
}

TEST_CASE("phase profiles") {
    CHECK(phase_profile_eval(PhaseProfile::linear(1.0), 2.0) == -2.0);
    CHECK(phase_profile_eval(PhaseProfile::quadratic(1.0), 2.0) == -4.0);
    CHECK(phase_profile_eval(PhaseProfile::linear(0.0), 17.0) == 0.0);
    CHECK(PhaseProfile::linear(2.0).kind() == ProfileKind::Linear);

    const auto custom = PhaseProfile::custom([](double w) { return std::sin(w); }, 10.0);
    CHECK(custom(1.0) == std::sin(1.0));
    CHECK_THROWS_AS(custom(10.5), DomainError);

    const auto tab = PhaseProfile::tabulated({0.0, 1.0, 2.0, 3.0}, {0.0, -1.0, -2.0, -3.0});
    CHECK(tab(1.5) == doctest::Approx(-1.5));
    CHECK_THROWS_AS(tab(3.5), DomainError);

    BathConfig cfg;
    cfg.phase_profile = ProfileKind::Quadratic;
    cfg.phase_lambda = 0.5;
    CHECK(PhaseProfile::from_config(cfg)(2.0) == -2.0);
    cfg.phase_profile = ProfileKind::Custom;
    CHECK_THROWS_AS(PhaseProfile::from_config(cfg), ConfigError);

    CHECK(profile_kind_from_string("quadratic") == ProfileKind::Quadratic);
    CHECK_THROWS_AS(profile_kind_from_string("cubic"), ConfigError);
}

TEST_CASE("bath config validation names the field") {
    BathConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.gamma = -0.1;
    try {
        cfg.validate();
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.field() == "gamma");
    }
    cfg = BathConfig{};
    cfg.cutoff = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = BathConfig{};
    cfg.ohmicity = 0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = BathConfig{};
    cfg.diffusion = -1.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("phase distribution: uniform limit, delta limit, truncation") {
    const PhaseDistribution pd(0.5);
    for (double x : {-3.0, -1.0, 0.0, 0.5, 3.1}) {
        CHECK(std::abs(phase_distribution_eval(pd, x, 60.0) - 0.5 / std::numbers::pi) < 1e-12);
    }
    CHECK_THROWS_AS(pd(0.0, 0.0), DomainError);
    CHECK_THROWS_AS(PhaseDistribution(0.0)(0.0, 1.0), DomainError);
    CHECK(pd.terms(1.0) >= 7);
    CHECK(std::exp(-std::pow(pd.terms(1.0) + 1, 2) * 0.5) < PhaseDistribution::kSeriesEps);
    CHECK(pd.terms(1e-12) == PhaseDistribution::kMaxTerms);
    CHECK(pd.truncation_warning(1e-7));
    CHECK_FALSE(pd.truncation_warning(1.0));
}

TEST_CASE("phase distribution: normalization and symmetry") {
    for (double diffusion : {0.1, 1.0, 3.0}) {
        const PhaseDistribution pd(diffusion);
        for (double scaled : {1e-3, 1e-2, 0.1, 1.0, 10.0, 100.0}) {
            const double t = scaled / diffusion;
            const auto norm = integrate_finite([&](double x) { return pd(x, t); }, -std::numbers::pi,
                                               std::numbers::pi, 1e-12);
            CHECK(std::abs(norm.value - 1.0) < 1e-10);
            for (double x : {0.1, 0.7, 2.0, 3.0}) CHECK(pd(x, t) == pd(-x, t));
        }
    }
}

TEST_CASE("phase distribution satisfies the diffusion equation") {
    // Richardson-refined central differences with dx = 1e-3, dt = 1e-5.
    const double diffusion = 1.0;
    const PhaseDistribution pd(diffusion);
    double worst = 0.0;
    for (double t : {0.1, 0.3, 1.0}) {
        for (double x = -3.0; x <= 3.0; x += 0.25) {
            const double dpdt = finite_difference_slope([&](double s) { return pd(x, s); }, t, 1e-5);
            const double d2pdx2 = finite_difference_second([&](double y) { return pd(y, t); }, x, 1e-3);
            worst = std::max(worst, std::abs(dpdt - diffusion * d2pdx2));
        }
    }
    CHECK(worst < 1e-6);
}
