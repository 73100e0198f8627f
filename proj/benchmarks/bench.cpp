#include <benchmark/benchmark.h>

#include <trajtopo/basis.hpp>
#include <trajtopo/classify.hpp>
#include <trajtopo/hodge.hpp>
#include <trajtopo/netgen.hpp>
#include <trajtopo/oracle.hpp>

using namespace trajtopo;

namespace {

GridDomain domain(int holes, int nodes) {
  DomainSpec d;
  d.holes = auto_holes(holes, d.width, d.height);
  d.target_nodes = nodes;
  d.seed = 1;
  return grid_domain(d);
}

void bm_build_surface(benchmark::State &state) {
  auto d = domain(3, static_cast<int>(state.range(0)));
  auto faces = d.surface->faces;
  auto coords = d.surface->coords;
  for (auto _ : state) {
    auto s = build_surface(faces, coords, 2);
    benchmark::DoNotOptimize(s);
  }
  state.SetItemsProcessed(state.iterations() * d.surface->F());
}
BENCHMARK(bm_build_surface)->Arg(400)->Arg(2000);

void bm_decompose(benchmark::State &state) {
  auto d = domain(3, static_cast<int>(state.range(0)));
  auto w = random_one_form(d.surface, 2);
  GossipConfig cfg;
  cfg.eps = 1e-4;
  for (auto _ : state) {
    auto r = decompose(d.surface, w, cfg);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(bm_decompose)->Arg(400)->Arg(1000)->Unit(benchmark::kMillisecond);

void bm_direct_solve(benchmark::State &state) {
  auto d = domain(3, static_cast<int>(state.range(0)));
  auto w = random_one_form(d.surface, 2);
  for (auto _ : state) {
    auto r = oracle::direct_solve(d.surface, w);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(bm_direct_solve)->Arg(400)->Arg(1000)->Unit(benchmark::kMillisecond);

void bm_path_integral(benchmark::State &state) {
  auto d = domain(3, 1000);
  auto w = random_one_form(d.surface, 2);
  auto p = shortest_path(d.surface, 0, d.surface->V - 1);
  Trajectory t{"t", p};
  for (auto _ : state)
    benchmark::DoNotOptimize(path_integral(w, t));
  state.SetItemsProcessed(state.iterations() * (p.size() - 1));
}
BENCHMARK(bm_path_integral);

void bm_tree_cotree(benchmark::State &state) {
  auto d = domain(3, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    oracle::TreeCotree tc(d.surface);
    benchmark::DoNotOptimize(tc.rank());
  }
}
BENCHMARK(bm_tree_cotree)->Arg(400)->Arg(2000)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
