// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>

#include "omegak/corpus.hpp"
#include "omegak/godel.hpp"
#include "omegak/ipc.hpp"
#include "omegak/syntax.hpp"
#include "omegak/tr.hpp"

using namespace omk;

namespace {

OracleTheory q_two() { return make_oracle_theory(theory_q(), DecidableSet(SetDescriptor::finite({2}))); }

IpcConfig table_config(Nat codes) {
  IpcConfig cfg;
  cfg.code_bound = codes;
  cfg.numcap = 5;
  cfg.instance_closure = true;
  for (int k = 1; k <= 8; ++k) cfg.seeds.push_back(q_axiom(k));
  cfg.seeds.push_back(parse_formula("(O 2)"));
  cfg.seeds.push_back(parse_formula("(-> (all x (= x x)) (all x (= x x)))"));
  cfg.seeds.push_back(parse_formula("(-> (all x (= (+ x 0) x)) (all x (= (+ x 0) x)))"));
  return cfg;
}

template <IpcTable (*Saturate)(const OracleTheory&, const FiniteWellOrder&, const IpcConfig&)>
void BM_saturate(benchmark::State& st) {
  OracleTheory T = q_two();
  FiniteWellOrder order = FiniteWellOrder::natural(static_cast<Nat>(st.range(0)));
  IpcConfig cfg = table_config(1024);
  for (auto _ : st) benchmark::DoNotOptimize(Saturate(T, order, cfg).derivations);
}

RecursionFormula bench_formula() {
  Rng rng(7);
  return random_recursion_formula(rng, 8, true, false);
}

void BM_tr_parallel(benchmark::State& st) {
  RecursionFormula rf = bench_formula();
  FiniteWellOrder order = FiniteWellOrder::natural(8);
  Nat cutoff = static_cast<Nat>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(tr_compute(rf, order, cutoff));
}

void BM_tr_serial(benchmark::State& st) {
  RecursionFormula rf = bench_formula();
  FiniteWellOrder order = FiniteWellOrder::natural(8);
  Nat cutoff = static_cast<Nat>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(tr_compute_serial(rf, order, cutoff));
}

void BM_hat_table(benchmark::State& st) {
  Rng rng(9);
  RecursionFormula rf = random_recursion_formula(rng, 4, true, false);
  FiniteWellOrder order = FiniteWellOrder::natural(4);
  for (auto _ : st) benchmark::DoNotOptimize(hat_table(rf, order, 4).prefix.size());
}

void BM_coding(benchmark::State& st) {
  auto corpus = formula_corpus(1, 1000, 4);
  for (auto _ : st)
    for (const auto& f : corpus) benchmark::DoNotOptimize(godel_encode(f));
}

}  // namespace

BENCHMARK(BM_saturate<saturate_ipc>)->Name("saturate/parallel")->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_saturate<saturate_ipc_serial>)->Name("saturate/serial")->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_tr_parallel)->Name("tr/parallel")->Arg(64)->Arg(512)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_tr_serial)->Name("tr/serial")->Arg(64)->Arg(512)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_hat_table)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_coding)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
