#include <benchmark/benchmark.h>

#include <numbers>

#include "randbath/dephasing.hpp"
#include "randbath/geomphase.hpp"
#include "randbath/montecarlo.hpp"

using namespace randbath;

namespace {

BathConfig weak(int n) {
    BathConfig c;
    c.gamma = 0.5;
    c.diffusion = 0.1;
    c.ohmicity = n;
    return c;
}

void BM_BetaClosedForm(benchmark::State& state) {
    const BathConfig c = weak(1);
    double t = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(beta_ohmic_closed(t, c));
        t = t < 10.0 ? t + 0.01 : 0.0;
    }
}
BENCHMARK(BM_BetaClosedForm);

void BM_BetaQuadrature(benchmark::State& state) {
    BathConfig c = weak(static_cast<int>(state.range(0)));
    const auto profile = PhaseProfile::quadratic(1.0);
    const double t = 5.0;
    for (auto _ : state) benchmark::DoNotOptimize(beta_quadrature(t, c, profile).value);
}
BENCHMARK(BM_BetaQuadrature)->Arg(1)->Arg(2)->Arg(3);

void BM_DecoherenceCurve(benchmark::State& state) {
    const auto grid = make_time_grid(0.0, 10.0, 0.01);
    const BetaFunction beta(weak(2));
    for (auto _ : state) benchmark::DoNotOptimize(decoherence_factor(grid, beta, 1).values.back());
}
BENCHMARK(BM_DecoherenceCurve)->Unit(benchmark::kMillisecond);

void BM_GeometricPhase(benchmark::State& state) {
    const BetaFunction beta(weak(1));
    for (auto _ : state) benchmark::DoNotOptimize(geometric_phase(beta, std::numbers::pi / 4).phi_g);
}
BENCHMARK(BM_GeometricPhase)->Unit(benchmark::kMicrosecond);

void BM_MonteCarlo(benchmark::State& state) {
    EnsembleConfig e;
    e.modes = static_cast<int>(state.range(0));
    e.trajectories = 64;
    e.dt = 0.01;
    e.horizon = 2.0;
    e.threads = 1;
    const BathConfig c = weak(1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(mc_decoherence_factor(c, PhaseProfile::linear(1.0), e).estimates.back());
    }
    state.SetItemsProcessed(state.iterations() * e.trajectories * e.modes * 201);
}
BENCHMARK(BM_MonteCarlo)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
