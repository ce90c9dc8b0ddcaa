#include <benchmark/benchmark.h>

#include <vector>

#include "palanatomy/anatomy.hpp"
#include "palanatomy/census.hpp"
#include "palanatomy/classmap.hpp"
#include "palanatomy/factor.hpp"
#include "palanatomy/matrix_group.hpp"

using namespace palanatomy;

namespace {

std::vector<MonicPoly> random_polys(const FieldPtr& F, int n, std::size_t count) {
  SplitMix64 rng(42);
  std::vector<MonicPoly> out;
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<Elem> lower;
    for (int j = 0; j < n; ++j) lower.push_back(Elem{static_cast<std::uint32_t>(rng.below(F->q()))});
    out.emplace_back(*F, std::move(lower));
  }
  return out;
}

void BM_FactorProfile(benchmark::State& state) {
  const auto F = Field::make(static_cast<std::uint32_t>(state.range(0)), 1);
  const auto polys = random_polys(F, static_cast<int>(state.range(1)), 256);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(factor_profile(polys[i++ % polys.size()]));
}
BENCHMARK(BM_FactorProfile)->Args({2, 10})->Args({3, 10})->Args({5, 10})->Args({3, 40})->Args({7, 100});

void BM_FullFactor(benchmark::State& state) {
  const auto F = Field::make(static_cast<std::uint32_t>(state.range(0)), static_cast<std::uint32_t>(state.range(1)));
  const auto polys = random_polys(F, static_cast<int>(state.range(2)), 256);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(factor(polys[i++ % polys.size()], 7));
}
BENCHMARK(BM_FullFactor)->Args({3, 1, 20})->Args({2, 2, 20})->Args({3, 2, 30});

void BM_PiTable(benchmark::State& state) {
  const auto F = Field::make(3, 2);
  for (auto _ : state) {
    PiTable t(F, static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(t.total(t.cap()));
  }
}
BENCHMARK(BM_PiTable)->Arg(64)->Arg(256);

void BM_ExactScan(benchmark::State& state) {
  const auto F = Field::make(3, 1);
  const auto fam = PolyFamily::parse(F, "Pstar:1", static_cast<int>(state.range(0)));
  RunOptions opts;
  for (auto _ : state) benchmark::DoNotOptimize(count_with_divisor(fam, 4, DivisorMode::Star, opts).count);
}
BENCHMARK(BM_ExactScan)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_MonteCarlo(benchmark::State& state) {
  const auto F = Field::make(5, 1);
  const auto fam = PolyFamily::parse(F, "Pstar:1", 60);
  RunOptions opts;
  opts.exact = false;
  opts.samples = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(count_property_Pr(fam, 2, opts).ratio);
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_MonteCarlo)->Arg(4096)->Unit(benchmark::kMillisecond);

void BM_ClassTokens(benchmark::State& state) {
  const auto G = ClassGroupSpec::parse("Sp:8:5");
  const auto A = ActionSpec::parse("nondeg:2");
  for (auto _ : state) benchmark::DoNotOptimize(delta_cc_ss(G, A).delta);
}
BENCHMARK(BM_ClassTokens)->Unit(benchmark::kMillisecond);

void BM_GroupClosure(benchmark::State& state) {
  const auto F = Field::make(3, 1);
  const Elem z = F->zero(), o = F->one(), w = F->from_int(2);
  const std::vector<Matrix> gens{{w, z, z, z, o, z, z, z, o}, {o, o, z, z, o, z, z, z, o}, {z, z, o, o, z, z, z, o, z}};
  for (auto _ : state) {
    MatrixGroup G("GL_3(3)", F, 3, gens, FormKind::None);
    benchmark::DoNotOptimize(G.charpoly_set().size());
  }
}
BENCHMARK(BM_GroupClosure)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
