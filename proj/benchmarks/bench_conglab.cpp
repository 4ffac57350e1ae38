#include <benchmark/benchmark.h>

#include "conglab/lifting.hpp"
#include "conglab/verify.hpp"

using namespace conglab;

namespace {

  FiniteAlgebra pick(int which) {
    switch (which) {
      case 0: return builders::ring_zn(12);
      case 1: return builders::ring_zn(16);
      case 2: return builders::chain_lattice(7);
      case 3: return builders::boolean_lattice(3);
      default: return builders::pentagon();
    }
  }

  void args(benchmark::internal::Benchmark* b) {
    for (int i = 0; i < 5; ++i) {
      b->Arg(i);
    }
  }

  void BM_CongruenceLattice(benchmark::State& state) {
    auto const A = pick(static_cast<int>(state.range(0)));
    state.SetLabel(A.name());
    for (auto _ : state) {
      benchmark::DoNotOptimize(CongruenceLattice::compute(A).size());
    }
  }
  BENCHMARK(BM_CongruenceLattice)->Apply(args);

  void BM_TopCommutator(benchmark::State& state) {
    auto const A   = pick(static_cast<int>(state.range(0)));
    auto const top = Congruence::total(A);
    state.SetLabel(A.name());
    for (auto _ : state) {
      benchmark::DoNotOptimize(commutator(A, top, top));
    }
  }
  BENCHMARK(BM_TopCommutator)->Apply(args);

  void BM_Analysis(benchmark::State& state) {
    auto const A = pick(static_cast<int>(state.range(0)));
    state.SetLabel(A.name());
    for (auto _ : state) {
      Analysis const an(A);
      benchmark::DoNotOptimize(an.size());
    }
  }
  BENCHMARK(BM_Analysis)->Apply(args)->Unit(benchmark::kMillisecond);

  void BM_AllLiftingReports(benchmark::State& state) {
    Analysis const     an(pick(static_cast<int>(state.range(0))));
    Spectrum const     sp(an);
    Reticulation const R(sp);
    state.SetLabel(an.algebra().name());
    for (auto _ : state) {
      Lifting const lf(R);
      for (CongId t = 0; t < an.size(); ++t) {
        benchmark::DoNotOptimize(lf.has_cblp(t));
      }
    }
  }
  BENCHMARK(BM_AllLiftingReports)->Apply(args)->Unit(benchmark::kMillisecond);

  void BM_Verify(benchmark::State& state) {
    auto const A = pick(static_cast<int>(state.range(0)));
    state.SetLabel(A.name());
    for (auto _ : state) {
      benchmark::DoNotOptimize(verify_algebra(A).passed());
    }
  }
  BENCHMARK(BM_Verify)->Arg(0)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
