#include <benchmark/benchmark.h>

#include "shadowlab/expansivity.hpp"
#include "shadowlab/generators.hpp"
#include "shadowlab/multiplicity.hpp"
#include "shadowlab/shadowing.hpp"

namespace {

using namespace shadowlab;

void BM_forward_modulus_not_onto(benchmark::State& state) {
  const FiniteSystem sys = gen_not_onto(static_cast<unsigned>(state.range(0)));
  const Threshold eps = Threshold::from_value(Rational(1) / Rational(3));
  for (auto _ : state) {
    ModulusReport report = modulus(sys, ShadowKind::Forward, eps);
    benchmark::DoNotOptimize(report);
  }
}
BENCHMARK(BM_forward_modulus_not_onto)->Arg(4)->Arg(6)->Arg(8);

void BM_positive_radius_n_expansive(benchmark::State& state) {
  const FiniteSystem sys = gen_n_expansive(2, 3, 1);
  for (auto _ : state) {
    Threshold radius = positive_expansivity_radius(sys, 1);
    benchmark::DoNotOptimize(radius);
  }
}
BENCHMARK(BM_positive_radius_n_expansive);

void BM_count_at_most_random(benchmark::State& state) {
  const FiniteSystem sys = gen_random(7, 8, RandomMode::Plane);
  const Threshold eps = Threshold::parse("1/4");
  const Threshold delta = Threshold::parse("1/8");
  for (auto _ : state) {
    CountDecision decision = count_at_most(sys, 2, eps, delta);
    benchmark::DoNotOptimize(decision);
  }
}
BENCHMARK(BM_count_at_most_random);

}  // namespace

BENCHMARK_MAIN();
