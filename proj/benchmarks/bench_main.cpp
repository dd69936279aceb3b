#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "feyncat/canonical.hpp"
#include "feyncat/category.hpp"
#include "feyncat/descriptor.hpp"
#include "feyncat/kan.hpp"
#include "feyncat/surface.hpp"

using namespace feyncat;

namespace {

Corolla corolla(int n, std::optional<int> genus = {}) {
  Corolla c;
  for (int k = 1; k <= n; ++k) c.flags.push_back(std::to_string(k));
  c.genus = genus;
  return c;
}

// n flags spread over two corollas, as even as possible
Aggregate two_corollas(int n) {
  Corolla a, b;
  for (int k = 0; k < n; ++k) (k % 2 ? b : a).flags.push_back("f" + std::to_string(k));
  return Aggregate({a, b});
}

}  // namespace

// The comma catalogs are cached after the first iteration; the pushforward
// itself is rebuilt every time.

static void BM_HomEnumerateG(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto x = two_corollas(n);
  auto y = Aggregate::corolla({"p", "q"});
  std::size_t count = 0;
  for (auto _ : state) {
    auto homs = hom_enumerate_all(x, y);
    count = homs.size();
    benchmark::DoNotOptimize(homs.data());
  }
  state.counters["morphisms"] = static_cast<double>(count);
}
BENCHMARK(BM_HomEnumerateG)->DenseRange(2, 8, 2);

static void BM_CanonicalMorphism(benchmark::State& state) {
  Sampler s(builtin_category("G"), 3);
  std::vector<GraphMorphism> pool;
  for (int i = 0; i < 64; ++i) pool.push_back(s.random_morphism().phi);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(canonical_form(pool[i++ % pool.size()]).certificate);
}
BENCHMARK(BM_CanonicalMorphism);

static void BM_CycAssGrafting(benchmark::State& state) {
  auto op = builtin_op("CycAss");
  Sampler s(builtin_category("C"), 5);
  std::vector<std::pair<GraphMorphism, Tuple>> pool;
  for (int i = 0; i < 64; ++i) {
    auto m = s.random_morphism();
    Tuple a;
    for (const auto& c : m.phi.source().corollas()) a.push_back(op->random_element(c, s.rng()));
    pool.emplace_back(m.phi, a);
  }
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& [phi, a] = pool[i++ % pool.size()];
    benchmark::DoNotOptimize(eval_morphism(*op, phi, a));
  }
}
BENCHMARK(BM_CycAssGrafting);

static void BM_PushforwardGenusZero(benchmark::State& state) {
  auto i = parse_functor("i:C->M");
  auto op = builtin_op("CycAss");
  Corolla c = corolla(static_cast<int>(state.range(0)), 0);
  for (auto _ : state) {
    CorollaPushforward p({i, op, c, default_bound(i, c, 4)});
    benchmark::DoNotOptimize(p.classes().size());
  }
}
BENCHMARK(BM_PushforwardGenusZero)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

static void BM_PushforwardGenusOne(benchmark::State& state) {
  auto i = parse_functor("i:C->M");
  auto op = builtin_op(state.range(0) ? "CycDihed" : "CycAss");
  Corolla c = corolla(2, 1);
  for (auto _ : state) {
    CorollaPushforward p({i, op, c, default_bound(i, c, 4)});
    benchmark::DoNotOptimize(p.classes().size());
  }
  state.SetLabel(op->name());
}
BENCHMARK(BM_PushforwardGenusOne)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_Decothm(benchmark::State& state) {
  auto op = builtin_op("CycAss");
  DecothmOptions opt;
  opt.max_flags = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(verify_decothm(builtin_category("C"), op, opt).pass);
}
BENCHMARK(BM_Decothm)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

static void BM_ClassifyWord(benchmark::State& state) {
  auto w = parse_word("a b c d a^-1 b^-1 c^-1 d^-1");
  for (auto _ : state) benchmark::DoNotOptimize(classify_word(w).genus);
}
BENCHMARK(BM_ClassifyWord);
BENCHMARK_MAIN();
