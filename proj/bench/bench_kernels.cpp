// Serial reference against the OpenMP variant of each enumeration kernel.
// The second benchmark argument selects the execution: 0 serial, 1 OpenMP.

#include "varispeed/fptas.hpp"
#include "varispeed/generators.hpp"
#include "varispeed/oracle.hpp"

#include <benchmark/benchmark.h>

using namespace varispeed;

namespace {

Execution exec_of(const benchmark::State& state) { return state.range(1) ? Execution::Parallel : Execution::Serial; }

void BM_ExactGivenSpeed(benchmark::State& state) {
  RandomParams p;
  auto inst = gen_random(static_cast<int>(state.range(0)), p, 1);
  auto sp = gen_random_speed(4, 1);
  for (auto _ : state) benchmark::DoNotOptimize(exact_given_speed(inst, sp, exec_of(state)).cost);
}

void BM_ExactContinuous(benchmark::State& state) {
  RandomParams p;
  p.kind = InstanceKind::ContinuousEnergy;
  auto inst = gen_random(static_cast<int>(state.range(0)), p, 2);
  for (auto _ : state) benchmark::DoNotOptimize(exact_continuous(inst, Rational(3), 2.0, exec_of(state)).cost);
}

void BM_ExactDiscrete(benchmark::State& state) {
  RandomParams p;
  p.kind = InstanceKind::DiscreteEnergy;
  auto inst = gen_random(static_cast<int>(state.range(0)), p, 3);
  auto menu = gen_random_menu(3, 2, 3);
  double E = 0.5 * (menu.min_energy(inst.total_volume()).get_d() +
                    Rational(inst.total_volume() * menu.energy_per_volume(0)).get_d());
  for (auto _ : state) benchmark::DoNotOptimize(exact_discrete(inst, menu, E, exec_of(state)).cost);
}

void BM_Fptas(benchmark::State& state) {
  RandomParams p;
  p.kind = InstanceKind::DiscreteEnergy;
  auto inst = gen_random(static_cast<int>(state.range(0)), p, 4);
  auto menu = gen_random_menu(2, 2, 4);
  Rational lo = menu.min_energy(inst.total_volume());
  Rational E = lo + (inst.total_volume() * menu.energy_per_volume(0) - lo) / 2;
  FptasOptions opt;
  opt.eps = 0.25;
  opt.exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(fptas(inst, menu, E, opt).dp_cost);
}

}  // namespace

BENCHMARK(BM_ExactGivenSpeed)->ArgsProduct({{7, 8}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExactContinuous)->ArgsProduct({{7, 8}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExactDiscrete)->ArgsProduct({{6, 7}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Fptas)->ArgsProduct({{8, 12}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
