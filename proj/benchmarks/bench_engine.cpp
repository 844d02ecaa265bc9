#include <benchmark/benchmark.h>

#include "cremona/coolidge.hpp"
#include "cremona/lattice.hpp"
#include "cremona/minimality.hpp"

using namespace cremona;

namespace {

ClusterPoint pt(std::string id, std::int64_t m, std::optional<std::string> parent = {}) {
  ClusterPoint p;
  p.id = std::move(id);
  p.mult = m;
  p.parent = parent;
  if (parent) p.proximate_to = {*parent};
  return p;
}

PlanePair sextic() { return {6, WeightedCluster({pt("n", 2), pt("t1", 2), pt("t2", 2, "t1")})}; }

PlanePair nodal_plane(std::int64_t d, std::int64_t nodes) {
  std::vector<ClusterPoint> pts;
  for (std::int64_t i = 0; i < nodes; ++i) pts.push_back(pt("p" + std::to_string(i), 2));
  return {d, WeightedCluster(std::move(pts))};
}

}  // namespace

static void BM_EnumerateSextic(benchmark::State& st) {
  const Pair p = sextic();
  for (auto _ : st) benchmark::DoNotOptimize(enumerate_standard_models(p));
}
BENCHMARK(BM_EnumerateSextic);

static void BM_MinimalDegreeChain(benchmark::State& st) {
  const PlanePair p{7, WeightedCluster({pt("p", 4), pt("q1", 2, "p"), pt("q2", 2, "q1")})};
  for (auto _ : st) benchmark::DoNotOptimize(is_minimal_degree(p));
}
BENCHMARK(BM_MinimalDegreeChain);

static void BM_ResolveRuled(benchmark::State& st) {
  ClusterPoint n = pt("n", 2);
  n.on_c0 = true;
  const RuledPair r{3, 3, 11, WeightedCluster({n})};
  for (auto _ : st) benchmark::DoNotOptimize(minimal_plane_model(resolve_along_c0(r)));
}
BENCHMARK(BM_ResolveRuled);

static void BM_ElmOracle(benchmark::State& st) {
  std::int64_t k = 0;
  for (auto _ : st) {
    benchmark::DoNotOptimize(elm_oracle(k % 5, 6, 6 * (k % 5) + 7, {(k & 1) != 0, k % 4}));
    ++k;
  }
}
BENCHMARK(BM_ElmOracle);

static void BM_LineEquivalence(benchmark::State& st) {
  const auto p = nodal_plane(st.range(0), (st.range(0) - 1) * (st.range(0) - 2) / 2);
  for (auto _ : st) benchmark::DoNotOptimize(line_equivalent(p));
}
BENCHMARK(BM_LineEquivalence)->Arg(3)->Arg(4)->Arg(5);
BENCHMARK_MAIN();
