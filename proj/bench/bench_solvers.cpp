// Serial reference vs OpenMP kernels. Thread count follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include <cmath>

#include "lpds/brute_force.hpp"
#include "lpds/dp_solver.hpp"
#include "lpds/generators.hpp"
#include "lpds/planar_ptas.hpp"

using namespace lpds;

namespace {

const Graph& bf_instance() {
  static const Graph g = random_graph(20, 0.15, 42);
  return g;
}

void BM_bf_serial(benchmark::State& st) {
  const Graph& g = bf_instance();
  const NodeSet all = NodeSet::all(20);
  for (auto _ : st) benchmark::DoNotOptimize(solve_bf(g, all, static_cast<int>(st.range(0))).opt);
}

void BM_bf_parallel(benchmark::State& st) {
  const Graph& g = bf_instance();
  const NodeSet all = NodeSet::all(20);
  for (auto _ : st) benchmark::DoNotOptimize(solve_bf_parallel(g, all, static_cast<int>(st.range(0))).opt);
}

// `rings` concentric squares joined by a matching; one level per ring.
std::pair<Graph, LevelAssignment> nested_squares(int rings) {
  std::vector<Edge> e;
  std::vector<std::pair<double, double>> pos;
  for (int r = 0; r < rings; ++r)
    for (int j = 0; j < 4; ++j) {
      const double a = M_PI / 2 * j + 0.1 * r, rad = std::pow(2.5, rings - r);
      pos.emplace_back(rad * std::cos(a), rad * std::sin(a));
      e.emplace_back(4 * r + j, 4 * r + (j + 1) % 4);
      if (r + 1 < rings) e.emplace_back(4 * r + j, 4 * (r + 1) + j);
    }
  Graph g(4 * rings, e);
  auto lv = compute_levels(g, rotation_from_positions(g, pos));
  return {g, lv};
}

void run_ptas(benchmark::State& st, bool parallel) {
  static const auto inst = nested_squares(24);
  PtasOptions opt;
  opt.parallel = parallel;
  for (auto _ : st) benchmark::DoNotOptimize(ptas(inst.first, inst.second, static_cast<int>(st.range(0)), Ratio{1, 1}, opt).solution.size());
}

void BM_ptas_serial(benchmark::State& st) { run_ptas(st, false); }
void BM_ptas_parallel(benchmark::State& st) { run_ptas(st, true); }

void BM_dp_grid(benchmark::State& st) {
  const Graph g = grid_graph(3, static_cast<int>(st.range(0)));
  const NodeSet all = NodeSet::all(static_cast<std::size_t>(g.num_nodes()));
  for (auto _ : st) benchmark::DoNotOptimize(solve_dp(g, all, 2).opt);
}

}  // namespace

BENCHMARK(BM_bf_serial)->Arg(1)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_bf_parallel)->Arg(1)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ptas_serial)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ptas_parallel)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_dp_grid)->Arg(4)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
