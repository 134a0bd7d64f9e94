// Microbenchmarks for the hot paths: normalization, parallel-reduct
// enumeration, and the parser/printer round trip.

#include <benchmark/benchmark.h>

#include "ipcf/develop.hpp"
#include "ipcf/generate.hpp"
#include "ipcf/ops.hpp"
#include "ipcf/parser.hpp"
#include "ipcf/prelude.hpp"
#include "ipcf/printer.hpp"
#include "ipcf/reduce.hpp"

namespace {

using namespace ipcf;

Term preludeTerm(const std::string& name) {
  for (const auto& d : preludeDefs())
    if (d.name == name) return d.expanded;
  throw std::runtime_error("no prelude def " + name);
}

void BM_NormalizePorBothSettle(benchmark::State& state) {
  auto reg = makeBuiltinRegistry();
  Term por = preludeTerm("por");
  Term t = Term::app(por, Term::box(Term::constant(ConstKind::False)),
                     Term::box(Term::constant(ConstKind::False)));
  for (auto _ : state) {
    Trace tr = normalize(t, kDefaultFuel, *reg);
    benchmark::DoNotOptimize(tr.steps.size());
  }
}
BENCHMARK(BM_NormalizePorBothSettle);

void BM_NormalizePorLeftDiverging(benchmark::State& state) {
  auto reg = makeBuiltinRegistry();
  Term por = preludeTerm("por");
  Term omega = preludeTerm("omega_bool");
  Term diverging = Term::app(preludeTerm("eval_bool"), omega);
  Term t = Term::app(por, Term::box(diverging),
                     Term::box(Term::constant(ConstKind::True)));
  for (auto _ : state) {
    Trace tr = normalize(t, kDefaultFuel, *reg);
    benchmark::DoNotOptimize(tr.steps.size());
  }
}
BENCHMARK(BM_NormalizePorLeftDiverging);

void BM_ParallelSteps(benchmark::State& state) {
  auto reg = makeBuiltinRegistry();
  GenConfig gc;
  gc.depth = int(state.range(0));
  gc.seed = 7;
  gc.corpus = Corpus::Modal;
  Term t = generateWellTyped(gc, *reg).term;
  for (auto _ : state) {
    auto set = parallelSteps(t, *reg);
    benchmark::DoNotOptimize(set.terms.size());
  }
}
BENCHMARK(BM_ParallelSteps)->Arg(4)->Arg(6);

void BM_CompleteDevelopment(benchmark::State& state) {
  auto reg = makeBuiltinRegistry();
  GenConfig gc;
  gc.depth = 6;
  gc.seed = 11;
  gc.corpus = Corpus::Fixpoint;
  Term t = generateWellTyped(gc, *reg).term;
  for (auto _ : state) {
    Term dev = completeDevelopment(t, *reg);
    benchmark::DoNotOptimize(dev);
  }
}
BENCHMARK(BM_CompleteDevelopment);

void BM_ParsePrintRoundTrip(benchmark::State& state) {
  std::string text{preludeText()};
  for (auto _ : state) {
    SourceFile f = parseFile(text);
    std::size_t n = 0;
    for (const auto& d : f.decls) n += printTerm(d.term).size();
    benchmark::DoNotOptimize(n);
  }
}
BENCHMARK(BM_ParsePrintRoundTrip);

}  // namespace

BENCHMARK_MAIN();
