#include <benchmark/benchmark.h>

#include <random>

#include "coslab/bourgain.hpp"
#include "coslab/chowla.hpp"
#include "coslab/dichotomy.hpp"
#include "coslab/harmonic.hpp"
#include "coslab/lab/random.hpp"
#include "coslab/subgroup.hpp"

using namespace coslab;

namespace {

DensityFunction random_function(const Group& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  DensityFunction f(g, Side::kPrimal);
  for (Index x = 0; x < g.order(); ++x) f[x] = {u(rng), u(rng)};
  return f;
}

const std::vector<std::string>& transform_groups() {
  static const std::vector<std::string> groups{"Z256", "Z1009", "Z64xZ64", "Z3xZ1361", "Z4096"};
  return groups;
}

void BM_FastTransform(benchmark::State& state) {
  const Group g = parse_group(transform_groups()[state.range(0)]);
  const DensityFunction f = random_function(g, 1);
  for (auto _ : state) benchmark::DoNotOptimize(dft(f));
  state.SetLabel(g.spec());
}
BENCHMARK(BM_FastTransform)->DenseRange(0, 4);

void BM_NaiveTransform(benchmark::State& state) {
  const Group g = parse_group(transform_groups()[state.range(0)]);
  const DensityFunction f = random_function(g, 1);
  for (auto _ : state) benchmark::DoNotOptimize(dft(f, TransformMethod::kNaive));
  state.SetLabel(g.spec());
}
BENCHMARK(BM_NaiveTransform)->DenseRange(0, 1)->Unit(benchmark::kMillisecond);

void BM_Mg(benchmark::State& state) {
  const Group g = make_group({state.range(0)});
  auto rng = lab::instance_rng(3, 0);
  const ElementSet a = lab::random_symmetric_set(rng, g, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(mg(g, a));
}
BENCHMARK(BM_Mg)->Arg(101)->Arg(1009)->Arg(4096);

void BM_EnumerateSubgroups(benchmark::State& state) {
  static const std::vector<std::string> groups{"Z2xZ2xZ2xZ2", "Z2xZ4xZ8", "Z6xZ6xZ6", "Z2xZ2xZ2xZ2xZ2xZ2"};
  const Group g = parse_group(groups[state.range(0)]);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_subgroups(g));
  state.SetLabel(g.spec());
}
BENCHMARK(BM_EnumerateSubgroups)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_StructureOrWitness(benchmark::State& state) {
  const Group g = make_group({2, 6});
  const ElementSet a = parse_set(g, "{(0,0),(1,0),(0,1),(0,5),(1,3)}");
  for (auto _ : state) benchmark::DoNotOptimize(structure_or_witness(g, a, 2.0));
}
BENCHMARK(BM_StructureOrWitness);

void BM_Beta(benchmark::State& state) {
  const Group g = make_group({1009});
  const auto s = coset_progression({Subgroup::trivial(g), {1}, {state.range(0)}});
  s.dilate(1.0);
  for (auto _ : state) benchmark::DoNotOptimize(beta(s, 1.0));
}
BENCHMARK(BM_Beta)->Arg(30)->Arg(400);

void BM_VerifyAxioms(benchmark::State& state) {
  const Group g = make_group({7, 11, 13});
  const auto s = coset_progression({Subgroup::trivial(g), {1, 13, 150}, {3, 2, 4}});
  for (auto _ : state) benchmark::DoNotOptimize(verify_axioms(s));
}
BENCHMARK(BM_VerifyAxioms)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
