#include <benchmark/benchmark.h>

#include "qcdyn/dynamics.hpp"
#include "qcdyn/interval.hpp"
#include "qcdyn/verifier.hpp"

using namespace qcdyn;

static void BM_EnumerateSpaces(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    std::uint64_t count = count_spaces(n);
    benchmark::DoNotOptimize(count);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long long>(count_spaces(n)));
}
BENCHMARK(BM_EnumerateSpaces)->Arg(4)->Arg(5)->Arg(6);

static void BM_PropertyVectorSweep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const std::vector<FiniteSpace> spaces = all_spaces(n);
  PropertyOptions opts;
  opts.record_witnesses = false;
  long long systems = 0;
  for (auto _ : state) {
    for (const FiniteSpace& sp : spaces)
      for_each_map(n, [&](const SelfMap& f) {
        const PropertyVector pv = property_vector(System{sp, f}, opts);
        benchmark::DoNotOptimize(pv.tt);
        ++systems;
      });
  }
  state.SetItemsProcessed(systems);
}
BENCHMARK(BM_PropertyVectorSweep)->Arg(3)->Arg(4);

static void BM_QuasicontinuityFast(benchmark::State& state) {
  const FiniteSpace sp = all_spaces(4)[137];
  long long maps = 0;
  for (auto _ : state) {
    for_each_map(4, [&](const SelfMap& f) {
      benchmark::DoNotOptimize(is_quasicontinuous_fast(sp, f));
      ++maps;
    });
  }
  state.SetItemsProcessed(maps);
}
BENCHMARK(BM_QuasicontinuityFast);

static void BM_QuasicontinuityLiteral(benchmark::State& state) {
  const FiniteSpace sp = all_spaces(4)[137];
  long long maps = 0;
  for (auto _ : state) {
    for_each_map(4, [&](const SelfMap& f) {
      benchmark::DoNotOptimize(is_quasicontinuous(sp, f, QcMethod::pointwise));
      ++maps;
    });
  }
  state.SetItemsProcessed(maps);
}
BENCHMARK(BM_QuasicontinuityLiteral);

static void BM_DiscreteVerifySweep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Resources r;
  r.exhaustive_sizes = std::vector<int>{};
  r.discrete_sizes = std::vector<int>{n};
  r.threads = 1;
  for (auto _ : state) {
    const SpecResult res = verify(find_spec("C58"), r);
    benchmark::DoNotOptimize(res.checked);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long long>(map_space_size(n)));
}
BENCHMARK(BM_DiscreteVerifySweep)->Arg(5)->Arg(6);

static void BM_HittingSet(benchmark::State& state) {
  const System sys{all_spaces(5)[4321], map_from_index(5, 2024)};
  const std::vector<mask_t> base = sys.space.pi_base();
  for (auto _ : state) {
    for (mask_t a : base)
      for (mask_t b : base) {
        const HittingSet h = hitting_set(sys, a, b);
        benchmark::DoNotOptimize(h.offset);
      }
  }
}
BENCHMARK(BM_HittingSet);

static void BM_MeshCertificate(benchmark::State& state) {
  const PWLMap db = pwl_doubling();
  for (auto _ : state) {
    const MeshCertificate c = certify_ttplus_on_mesh(db, 16, 32);
    benchmark::DoNotOptimize(c.complete);
  }
}
BENCHMARK(BM_MeshCertificate);

BENCHMARK_MAIN();
