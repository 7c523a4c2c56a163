#include <benchmark/benchmark.h>

#include <random>
#include <variant>

#include "relhyp/construct.hpp"
#include "relhyp/motion.hpp"
#include "relhyp/presentation.hpp"
#include "relhyp/prover.hpp"
#include "relhyp/word_io.hpp"

using namespace relhyp;

namespace {

RelatorPresentation starting(int k) {
  auto G = BaseGroup::free({"a", "b"});
  return RelatorPresentation::make(G, parse_word(Alphabet::make(G, 0), "a.t.a.t^-2.b.t^2.b.t^-2.a.t^2"), k);
}

NormalizedPresentation normalized(int k) {
  return std::get<NormalizedPresentation>(normalize(starting(k)));
}

void BM_Normalize(benchmark::State& state) {
  auto p = starting(2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(normalize(p));
  }
}
BENCHMARK(BM_Normalize);

void BM_Simulate(benchmark::State& state) {
  auto         np    = normalized(3);
  auto         cells = RelatorCells::from(np);
  std::mt19937 rng(1);
  auto         d = random_diagram(rng, cells, {.faces = static_cast<int>(state.range(0))});
  for (auto _ : state) {
    auto report = simulate_collisions(d, build_standard_schedules(d, np));
    benchmark::DoNotOptimize(report.complete_points);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Simulate)->RangeMultiplier(2)->Range(4, 64)->Complexity();

void BM_CertificateFromDiagram(benchmark::State& state) {
  auto         np    = normalized(3);
  auto         cells = RelatorCells::from(np);
  std::mt19937 rng(2);
  auto         d = random_diagram(rng, cells, {.faces = static_cast<int>(state.range(0))});
  for (auto _ : state) {
    benchmark::DoNotOptimize(collapse_certificate(certificate_from_diagram(d, np), np));
  }
}
BENCHMARK(BM_CertificateFromDiagram)->RangeMultiplier(2)->Range(4, 64);

void BM_BoundedProve(benchmark::State& state) {
  auto p     = starting(2);
  auto A     = p.alphabet();
  int  terms = static_cast<int>(state.range(0));
  auto u     = TWord::identity(A);
  for (auto f : {"b.t", "t^-1.a", "a.b^-1.t"}) {
    if (terms-- == 0) {
      break;
    }
    auto c = parse_word(A, f);
    u      = u * c.inverse() * p.relator() * c;
  }
  for (auto _ : state) {
    auto r = bounded_prove(u, p, {.max_terms = static_cast<int>(state.range(0)), .max_conj_len = 3});
    benchmark::DoNotOptimize(r.nodes);
  }
}
BENCHMARK(BM_BoundedProve)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
