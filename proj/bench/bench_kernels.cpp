// Serial reference vs OpenMP kernel for each parallel hot spot.
#include <benchmark/benchmark.h>

#include <vector>

#include "cyclecover/absorber.hpp"
#include "cyclecover/expander.hpp"
#include "cyclecover/randgen.hpp"
#include "cyclecover/rng.hpp"
#include "cyclecover/sparseness.hpp"

using namespace cyclecover;

namespace {

Exec mode(const benchmark::State& st) { return st.range(0) == 0 ? Exec::Serial : Exec::Parallel; }

const Graph& host() {
  static const Graph g = gnp(4000, 0.02, 1);
  return g;
}

void BM_Matvec(benchmark::State& st) {
  const Graph& g = host();
  Rng rng(2);
  std::vector<double> x(static_cast<std::size_t>(g.n())), y;
  for (auto& v : x) v = rng.uniform();
  for (auto _ : st) {
    shifted_adjacency_matvec(g, 0.02, x, y, mode(st));
    benchmark::DoNotOptimize(y.data());
  }
}

void BM_Gnp(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(gnp(3000, 0.02, 3, mode(st)).m());
}

void BM_MaxCut(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(max_cut_local_search(host(), 8, 4, mode(st)).cut);
}

void BM_ViolationSearch(benchmark::State& st) {
  const Graph g = gnp(600, 0.05, 5);
  ViolationSearchOptions opt;
  opt.restarts = 16;
  opt.exec = mode(st);
  for (auto _ : st) benchmark::DoNotOptimize(violation_search(g, 0.05, 1.0, opt).has_value());
}

void BM_CutSearch(benchmark::State& st) {
  CutSearchOptions opt;
  opt.exec = mode(st);
  for (auto _ : st) benchmark::DoNotOptimize(best_cut_search(host(), opt)->ratio);
}

void BM_TemplateVerify(benchmark::State& st) {
  static const TemplateGraph t = build_template(50, 20, 6);
  for (auto _ : st) benchmark::DoNotOptimize(verify_template(t, VerifyMode::Sampled, 2000, 7, mode(st)).passed);
}

}  // namespace

// Argument 0 selects the serial reference, 1 the OpenMP kernel.
BENCHMARK(BM_Matvec)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Gnp)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MaxCut)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ViolationSearch)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CutSearch)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TemplateVerify)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
