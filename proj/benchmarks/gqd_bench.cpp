#include <benchmark/benchmark.h>

#include "gqd/discord.hpp"
#include "gqd/linalg.hpp"
#include "gqd/protocol.hpp"
#include "gqd/reservoir.hpp"
#include "gqd/states.hpp"
#include "gqd/sweep.hpp"

namespace {

const gqd::ReservoirParams kReservoir{1.0, 1.0, 1.0, 0.0};

void BM_HermitianEigenvalues(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  const gqd::DensityMatrix rho = gqd::random_density(42, dim);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gqd::hermitian_eigenvalues(rho.mat()));
  }
}
BENCHMARK(BM_HermitianEigenvalues)->Arg(9)->Arg(27)->Arg(81);

void BM_TwoQutritChannel(benchmark::State& state) {
  const gqd::DensityMatrix rho = gqd::werner(0.8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gqd::apply_channel_two_qutrit(rho, kReservoir, 2.0));
  }
}
BENCHMARK(BM_TwoQutritChannel);

void BM_ProtectTwoQutrit(benchmark::State& state) {
  const gqd::DensityMatrix rho = gqd::werner(0.8);
  const gqd::WeakMeasurementParams w{0.5, 0.5};
  for (auto _ : state) {
    benchmark::DoNotOptimize(gqd::protect_two_qutrit(rho, kReservoir, w, 2.0));
  }
}
BENCHMARK(BM_ProtectTwoQutrit);

void BM_DiscordLowerBound(benchmark::State& state) {
  const gqd::DensityMatrix rho = gqd::werner(0.8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gqd::gqd_lower_bound(rho, 3, 3));
  }
}
BENCHMARK(BM_DiscordLowerBound);

void BM_SweepPoint(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(gqd::query_point(gqd::SweepFamily::Werner, 0.8, 0.5, std::nullopt,
                                              1.0, 0.0, 2.0, gqd::SweepMode::Protected));
  }
}
BENCHMARK(BM_SweepPoint);

}  // namespace

BENCHMARK_MAIN();
