// Copyright 2026 The upag Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Query and construction timings. Graph arguments are (M, lg n, encoding)
// with encoding 0 = RRR and 1 = plain.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <map>
#include <memory>
#include <tuple>
#include <utility>
#include <vector>

#include "upag/bit_vector.hpp"
#include "upag/compressed_graph.hpp"
#include "upag/pa_gen.hpp"
#include "upag/rng.hpp"

namespace {

using upag::CompressedGraph;

upag::PaGraph sample(std::uint64_t M, std::uint64_t n) {
  upag::GenConfig cfg;
  cfg.M = M;
  cfg.n = n;
  cfg.rng_seed = 2026;
  cfg.exact_cutoff = 0;
  return upag::generate(cfg);
}

// Built once per argument triple and shared by every benchmark.
const CompressedGraph& graph(const benchmark::State& state) {
  using Key = std::tuple<std::int64_t, std::int64_t, std::int64_t>;
  static std::map<Key, std::unique_ptr<CompressedGraph>> cache;
  const Key key{state.range(0), state.range(1), state.range(2)};
  auto& slot = cache[key];
  if (!slot) {
    const auto g = sample(static_cast<std::uint64_t>(state.range(0)),
                          std::uint64_t{1} << state.range(1));
    upag::GraphBuildOptions opts;
    opts.encoding = state.range(2) == 0 ? upag::BitEncoding::kRrr : upag::BitEncoding::kPlain;
    slot = std::make_unique<CompressedGraph>(CompressedGraph::build(g.dag, opts));
  }
  return *slot;
}

void graph_args(benchmark::internal::Benchmark* b) {
  for (std::int64_t M : {1, 3, 10}) {
    for (std::int64_t lg_n : {12, 16}) {
      for (std::int64_t enc : {0, 1}) b->Args({M, lg_n, enc});
    }
  }
}

// Random vertices drawn up front so the RNG stays out of the timed loop.
std::vector<std::uint64_t> vertices(std::uint64_t n, std::size_t count) {
  upag::Rng rng(7);
  std::vector<std::uint64_t> v(count);
  for (auto& x : v) x = 1 + rng.below(n);
  return v;
}

constexpr std::size_t kProbeCount = 4096;

void BM_OutNeighbour(benchmark::State& state) {
  const auto& g = graph(state);
  const auto vs = vertices(g.n(), kProbeCount);
  std::size_t j = 0;
  for (auto _ : state) {
    const auto v = vs[j++ % vs.size()];
    benchmark::DoNotOptimize(g.out_neighbour(v, 1 + v % g.M()));
  }
}
BENCHMARK(BM_OutNeighbour)->Apply(graph_args);

void BM_InNeighbour(benchmark::State& state) {
  const auto& g = graph(state);
  // Only pairs with a valid index; many vertices have no in-neighbours.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> probes;
  upag::Rng rng(9);
  while (probes.size() < kProbeCount) {
    const std::uint64_t v = rng.below(g.n() + 1);
    const std::uint64_t d = g.degree_in(v);
    if (d > 0) probes.emplace_back(v, 1 + rng.below(d));
  }
  std::size_t j = 0;
  for (auto _ : state) {
    const auto [v, i] = probes[j++ % probes.size()];
    benchmark::DoNotOptimize(g.in_neighbour(v, i));
  }
}
BENCHMARK(BM_InNeighbour)->Apply(graph_args);

void BM_DegreeIn(benchmark::State& state) {
  const auto& g = graph(state);
  const auto vs = vertices(g.n(), kProbeCount);
  std::size_t j = 0;
  for (auto _ : state) benchmark::DoNotOptimize(g.degree_in(vs[j++ % vs.size()]));
}
BENCHMARK(BM_DegreeIn)->Apply(graph_args);

void BM_Adjacent(benchmark::State& state) {
  const auto& g = graph(state);
  const auto us = vertices(g.n(), kProbeCount);
  const auto vs = vertices(g.n(), kProbeCount + 1);
  std::size_t j = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(g.adjacent(us[j % us.size()], vs[(j * 7) % vs.size()]));
    ++j;
  }
}
BENCHMARK(BM_Adjacent)->Apply(graph_args);

void BM_Build(benchmark::State& state) {
  const auto g = sample(static_cast<std::uint64_t>(state.range(0)),
                        std::uint64_t{1} << state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(CompressedGraph::build(g.dag));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.dag.n()));
}
BENCHMARK(BM_Build)->Args({3, 12})->Args({3, 16})->Unit(benchmark::kMillisecond);

void BM_Serialize(benchmark::State& state) {
  const auto& g = graph(state);
  for (auto _ : state) {
    const auto bytes = g.serialize();
    benchmark::DoNotOptimize(CompressedGraph::deserialize(bytes));
  }
}
BENCHMARK(BM_Serialize)->Args({3, 16, 0})->Unit(benchmark::kMillisecond);

void BM_BitVectorRank(benchmark::State& state) {
  upag::Rng rng(11);
  upag::BitArray bits;
  const std::uint64_t size = 1 << 20;
  for (std::uint64_t i = 0; i < size; ++i) bits.push_back(rng.below(1024) < 128);
  const upag::BitVector bv(bits, state.range(0) == 0 ? upag::BitEncoding::kRrr
                                                     : upag::BitEncoding::kPlain);
  std::vector<std::uint64_t> pos(kProbeCount);
  for (auto& p : pos) p = rng.below(size);
  std::size_t j = 0;
  for (auto _ : state) benchmark::DoNotOptimize(bv.rank1(pos[j++ % pos.size()]));
}
BENCHMARK(BM_BitVectorRank)->Arg(0)->Arg(1);

}  // namespace

BENCHMARK_MAIN();
