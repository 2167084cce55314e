#include <benchmark/benchmark.h>

#include <memory>
#include <random>

#include "dtutte/constructions.hpp"
#include "dtutte/cover.hpp"
#include "dtutte/generate.hpp"
#include "dtutte/harmonizer.hpp"
#include "dtutte/patch.hpp"

using namespace dtutte;

namespace {

std::shared_ptr<const Triangulation> doubled() {
  static auto t = std::make_shared<const Triangulation>(double_with_gadgets(crown(4)));
  return t;
}

// Reduction of random walks with null-homotopic noise inside a deep patch.
void BM_ReduceOpen(benchmark::State& state) {
  static PlanePatch p = generate_plane_patch(7, 11, {6, 8});
  const Triangulation& t = p.surface;
  const int len = static_cast<int>(state.range(0));
  std::mt19937_64 rng(1);
  std::vector<Walk> inputs;
  for (int i = 0; i < 32; ++i) {
    Walk w = random_walk(t, p.center, len / 2, rng);
    // Out along one walk, then back to the center along a shortest path.
    Walk home = shortest_walk(t, walk_end(t, w), p.center);
    w.edges.insert(w.edges.end(), home.edges.begin(), home.edges.end());
    inputs.push_back(w);
  }
  size_t i = 0;
  for (auto _ : state) {
    try {
      benchmark::DoNotOptimize(reduce_open(t, inputs[i++ % inputs.size()]));
    } catch (const DomainError&) {
    }
  }
  state.SetComplexityN(len);
}
BENCHMARK(BM_ReduceOpen)->RangeMultiplier(2)->Range(4, 12)->Complexity();

// Full harmonization of random drawings on the doubled crown.
void BM_Harmonize(benchmark::State& state) {
  RandomDrawingOptions o;
  o.max_edges = static_cast<int>(state.range(0));
  o.max_walk = 10;
  long long moves = 0;
  uint64_t seed = 1;
  for (auto _ : state) {
    state.PauseTiming();
    Drawing f = random_drawing(doubled(), seed++, o);
    state.ResumeTiming();
    HarmonizeResult r = harmonize(f);
    moves += r.moves;
    benchmark::DoNotOptimize(r);
  }
  state.counters["moves/run"] = benchmark::Counter(static_cast<double>(moves), benchmark::Counter::kAvgIterations);
}
BENCHMARK(BM_Harmonize)->Arg(10)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

// Cover chart growth by radius.
void BM_CoverExpand(benchmark::State& state) {
  const int radius = static_cast<int>(state.range(0));
  int vertices = 0;
  for (auto _ : state) {
    CoverChart chart(doubled(), Vertex(0));
    chart.expand(radius);
    vertices = chart.num_vertices();
    benchmark::DoNotOptimize(vertices);
  }
  state.counters["chart_vertices"] = vertices;
}
BENCHMARK(BM_CoverExpand)->DenseRange(1, 3)->Unit(benchmark::kMicrosecond);

// Lifting long random walks grows the chart only along the walk.
void BM_LiftWalk(benchmark::State& state) {
  const int len = static_cast<int>(state.range(0));
  std::mt19937_64 rng(3);
  Walk w = random_walk(*doubled(), Vertex(0), len, rng);
  for (auto _ : state) {
    CoverChart chart(doubled(), Vertex(0));
    benchmark::DoNotOptimize(lift_walk(chart, w, chart.root()));
  }
}
BENCHMARK(BM_LiftWalk)->RangeMultiplier(4)->Range(8, 512)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
