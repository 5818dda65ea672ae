// montecarlo.hpp: stochastic estimate of the decoherence factor
//
// The bath is discretized into K modes with frequencies w_k, amplitudes
// c_k = sqrt(I(w_k) dw) and initial phases theta(w_k). Each mode's phase
// diffuses as an unwrapped Brownian motion x_k(t) with <x^2> = 2 D t, and
// the qubit coherence is the ensemble average <exp(-i phi(t))>.
//
// Two readings of the accumulated phase phi(t) are available:
//
//   FrozenPhase   phi(t) = sum_k c_k [sin(w_k t + theta_k + x_k(t)) - sin(theta_k)]
//                 The time integral of each mode is taken with its random
//                 phase held at the current value, then averaged over the
//                 phase distribution at time t. Its second cumulant is
//                 exactly beta(t) in the continuum limit, so |F_mc| tracks
//                 exp(-beta) up to higher cumulants and sampling noise.
//
//   PathIntegral  phi(t) = int_0^t sum_k c_k cos(w_k s + theta_k + x_k(s)) ds
//                 (trapezoidal rule on the path grid). Kept as a literal
//                 path-wise alternative; it does not reproduce beta(t).

#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "randbath/bath.hpp"

namespace randbath {

struct BathMode {
    double omega;        // w_k
    double amplitude;    // c_k >= 0
    double phase;        // theta_k(0)
};

struct DiscretizedBath {
    std::vector<BathMode> modes;  // strictly increasing in omega
    double delta_omega{0.0};
    double omega_max{0.0};

    double total_weight() const;  // sum c_k^2
};

// Midpoint grid w_k = (k - 1/2) dw, dw = omega_max / K.
DiscretizedBath discretize_bath(const SpectralDensity& sd, const PhaseProfile& profile, int modes,
                                double omega_max);

enum class PhaseModel { FrozenPhase, PathIntegral };

std::string_view to_string(PhaseModel model) noexcept;
PhaseModel phase_model_from_string(std::string_view name);

struct EnsembleConfig {
    int modes{512};              // K
    int trajectories{2000};      // M
    double dt{0.005};            // path time step, units of 1/Omega
    double horizon{10.0};        // T
    std::uint64_t seed{20120417};
    double omega_max{0.0};       // <= 0 selects beta_omega_max of the density
    PhaseModel model{PhaseModel::FrozenPhase};
    unsigned threads{0};         // 0 = hardware concurrency; never changes results

    void validate() const;  // throws ConfigError
    std::size_t steps() const;  // number of dt steps to reach the horizon
};

// Brownian phase path on t_j = j dt, j = 0..round(T / dt): x(0) = 0 and
// independent N(0, 2 D dt) increments. `stream` selects an independent
// sequence for the same seed.
std::vector<double> sample_phase_path(double diffusion, double dt, double horizon, std::uint64_t seed,
                                      std::uint64_t stream = 0);

// One path per mode on the common grid `times`. Throws std::invalid_argument
// when the shapes disagree.
std::vector<double> accumulated_phase(const DiscretizedBath& bath, const std::vector<std::vector<double>>& paths,
                                      const std::vector<double>& times);
std::vector<double> frozen_phase(const DiscretizedBath& bath, const std::vector<std::vector<double>>& paths,
                                 const std::vector<double>& times);

struct McCurve {
    std::vector<double> times;
    std::vector<std::complex<double>> estimates;  // <exp(-i phi(t))>
    std::vector<double> stderr_abs;               // standard error of |estimate|
    int trajectories{0};
    int modes{0};
    PhaseModel model{PhaseModel::FrozenPhase};
    std::vector<std::string> warnings;

    double magnitude(std::size_t i) const { return std::abs(estimates[i]); }
};

// Ensemble average over `ensemble.trajectories` trajectories, each with fresh
// phase paths for every mode. Trajectory i, mode k draws from stream
// trajectory_stream(i, k) of ensemble.seed, and partial sums are combined in a
// fixed pairwise order, so the result is bitwise reproducible for any thread
// count.
McCurve mc_decoherence_factor(const SpectralDensity& sd, double diffusion, const PhaseProfile& profile,
                              const EnsembleConfig& ensemble);
McCurve mc_decoherence_factor(const BathConfig& config, const PhaseProfile& profile, const EnsembleConfig& ensemble);

}  // namespace randbath
