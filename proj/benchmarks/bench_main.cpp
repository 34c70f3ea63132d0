#include <numbers>

#include <benchmark/benchmark.h>

#include "qif/analytic.hpp"
#include "qif/config.hpp"
#include "qif/numeric.hpp"
#include "qif/runner.hpp"

using namespace qif;

namespace {

InterferometerParams reference() { return InterferometerParams::balanced(0.75 * std::numbers::pi, 0.0, 0.3); }

void BM_ClosedFormMarginal(benchmark::State& state) {
  const auto params = reference();
  double p = -4.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        analytic::marginal_density(params, Electron::first, p, analytic::Normalization::normalized));
    p = p > 4.0 ? -4.0 : p + 1e-3;
  }
}
BENCHMARK(BM_ClosedFormMarginal);

void BM_JointOracle(benchmark::State& state) {
  const auto params = reference();
  const auto grid = numeric::joint_oracle_grid(params);
  for (auto _ : state) {
    benchmark::DoNotOptimize(numeric::joint_marginal_oracle(params, grid, Electron::first));
  }
}
BENCHMARK(BM_JointOracle)->Unit(benchmark::kMillisecond);

void BM_KernelPurity(benchmark::State& state) {
  const auto params = reference();
  const auto grid = numeric::MomentumGrid::symmetric(8.3, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(numeric::kernel_purity(params, grid, Electron::first));
}
BENCHMARK(BM_KernelPurity)->Arg(201)->Arg(401)->Unit(benchmark::kMillisecond);

void BM_MomentumKick(benchmark::State& state) {
  const GaussianPacket packet(1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(numeric::momentum_kick_oracle(packet, 0.3, static_cast<std::size_t>(state.range(0))));
  }
}
BENCHMARK(BM_MomentumKick)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);

void BM_Sweep(benchmark::State& state) {
  const auto config = cli::parse_config("mode=sweep\n");
  for (auto _ : state) benchmark::DoNotOptimize(cli::execute(config));
}
BENCHMARK(BM_Sweep)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
