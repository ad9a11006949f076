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

#include "upag/construct.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <string>
#include <tuple>

#include "upag/errors.hpp"
#include "upag/rng.hpp"

namespace upag {

namespace {

struct OutEdge {
  std::uint64_t edge_id;
  Vertex head;
};

}  // namespace

PeelResult peel_with_labels(const UndirectedMultigraph& u, std::uint64_t M, PeelOrder order,
                            std::uint64_t seed) {
  if (M == 0) throw std::invalid_argument("M must be >= 1");
  const std::uint64_t vertices = u.vertex_count();
  if (vertices < 2) throw NotPeelable("graph needs at least two vertices");
  const std::uint64_t n = vertices - 1;
  if (u.edge_count() != n * M) {
    throw NotPeelable("edge count " + std::to_string(u.edge_count()) + " is not n*M = " +
                      std::to_string(n * M));
  }

  std::vector<std::vector<std::uint64_t>> incident(vertices);
  for (std::uint64_t e = 0; e < u.edge_count(); ++e) {
    const auto& edge = u.edges()[e];
    if (edge.a == edge.b) throw NotPeelable("self-loop at vertex " + std::to_string(edge.a));
    incident[edge.a].push_back(e);
    incident[edge.b].push_back(e);
  }

  std::vector<std::uint64_t> degree(u.degrees().begin(), u.degrees().end());
  std::vector<bool> edge_gone(u.edge_count(), false);
  std::vector<bool> vertex_gone(vertices, false);
  std::vector<std::vector<OutEdge>> out(vertices);

  // Eligible vertices: residual degree M, not yet peeled, not the root.
  std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> lowest;
  std::vector<Vertex> pool;
  Rng rng(seed);
  auto offer = [&](Vertex v) {
    if (v == 0 || vertex_gone[v] || degree[v] != M) return;
    if (order == PeelOrder::kLowestIndex) {
      lowest.push(v);
    } else {
      pool.push_back(v);
    }
  };
  auto take = [&]() -> std::optional<Vertex> {
    if (order == PeelOrder::kLowestIndex) {
      while (!lowest.empty()) {
        const Vertex v = lowest.top();
        lowest.pop();
        if (!vertex_gone[v] && degree[v] == M) return v;
      }
      return std::nullopt;
    }
    while (!pool.empty()) {
      const std::uint64_t i = rng.below(pool.size());
      const Vertex v = pool[i];
      pool[i] = pool.back();
      pool.pop_back();
      if (!vertex_gone[v] && degree[v] == M) return v;
    }
    return std::nullopt;
  };

  for (Vertex v = 1; v < vertices; ++v) offer(v);
  for (std::uint64_t peeled = 0; peeled < n; ++peeled) {
    const auto next = take();
    if (!next) {
      throw NotPeelable("no vertex of residual degree " + std::to_string(M) + " after peeling " +
                        std::to_string(peeled) + " of " + std::to_string(n) + " vertices");
    }
    const Vertex v = *next;
    vertex_gone[v] = true;
    for (std::uint64_t e : incident[v]) {
      if (edge_gone[e]) continue;
      edge_gone[e] = true;
      const auto& edge = u.edges()[e];
      const Vertex other = edge.a == v ? edge.b : edge.a;
      out[v].push_back({e, other});
      --degree[other];
      offer(other);
    }
    degree[v] = 0;
  }

  // Arrival order: smallest-label-first linear extension, root first.
  std::vector<std::uint64_t> pending(vertices, 0);
  std::vector<std::vector<Vertex>> pointed_by(vertices);
  for (Vertex v = 1; v < vertices; ++v) {
    std::sort(out[v].begin(), out[v].end(),
              [](const OutEdge& x, const OutEdge& y) { return x.edge_id < y.edge_id; });
    pending[v] = out[v].size();
    for (const auto& oe : out[v]) pointed_by[oe.head].push_back(v);
  }
  std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> ready;
  ready.push(0);
  std::vector<Vertex> arrival;
  arrival.reserve(vertices);
  while (!ready.empty()) {
    const Vertex v = ready.top();
    ready.pop();
    arrival.push_back(v);
    for (Vertex x : pointed_by[v]) {
      if (--pending[x] == 0) ready.push(x);
    }
  }
  if (arrival.size() != vertices) throw NotPeelable("recovered orientation is cyclic");

  PeelResult r;
  r.relabel.assign(vertices, 0);
  for (std::uint64_t t = 0; t < vertices; ++t) {
    r.relabel[arrival[t]] = t;
    if (arrival[t] != t) r.relabelled = true;
  }
  std::vector<Vertex> targets;
  targets.reserve(n * M);
  for (std::uint64_t t = 1; t < vertices; ++t) {
    for (const auto& oe : out[arrival[t]]) targets.push_back(r.relabel[oe.head]);
  }
  r.dag = Dag(n, M, std::move(targets));
  return r;
}

Dag peel(const UndirectedMultigraph& u, std::uint64_t M) { return peel_with_labels(u, M).dag; }

bool peel_is_unambiguous(const UndirectedMultigraph& u, std::uint64_t M, unsigned trials,
                         std::uint64_t seed) {
  const PeelResult reference = peel_with_labels(u, M);
  Rng rng(seed);
  for (unsigned i = 0; i < trials; ++i) {
    const PeelResult other = peel_with_labels(u, M, PeelOrder::kRandom, rng.next());
    if (!(other.dag == reference.dag) || other.relabel != reference.relabel) return false;
  }
  return true;
}

SigmaRank sigma_rank(const Dag& d, TieBreak tie, std::span<const std::uint64_t> custom_priority) {
  const std::uint64_t vertices = d.vertex_count();
  std::vector<std::uint64_t> tie_key(vertices);
  switch (tie) {
    case TieBreak::kAscendingIndex:
      std::iota(tie_key.begin(), tie_key.end(), std::uint64_t{0});
      break;
    case TieBreak::kFirstOccurrence: {
      std::fill(tie_key.begin(), tie_key.end(), std::numeric_limits<std::uint64_t>::max());
      const auto targets = d.targets();
      for (std::uint64_t i = targets.size(); i-- > 0;) tie_key[targets[i]] = i;
      break;
    }
    case TieBreak::kCustom:
      if (custom_priority.size() != vertices) {
        throw std::invalid_argument("custom tie-break needs one priority per vertex");
      }
      tie_key.assign(custom_priority.begin(), custom_priority.end());
      break;
  }
  SigmaRank s;
  s.tie_break = tie;
  s.vertex_at.resize(vertices);
  std::iota(s.vertex_at.begin(), s.vertex_at.end(), Vertex{0});
  std::sort(s.vertex_at.begin(), s.vertex_at.end(), [&](Vertex a, Vertex b) {
    return std::tuple(d.in_degree(a), tie_key[a], a) < std::tuple(d.in_degree(b), tie_key[b], b);
  });
  s.rank.resize(vertices);
  for (std::uint64_t r = 0; r < vertices; ++r) s.rank[s.vertex_at[r]] = r;
  return s;
}

SigmaRank sigma_rank_of_sequence(std::span<const std::uint64_t> seq,
                                 std::uint64_t alphabet_size) {
  std::vector<std::uint64_t> freq(alphabet_size, 0);
  for (auto c : seq) {
    if (c >= alphabet_size) throw std::invalid_argument("symbol outside alphabet");
    ++freq[c];
  }
  SigmaRank s;
  s.vertex_at.resize(alphabet_size);
  std::iota(s.vertex_at.begin(), s.vertex_at.end(), std::uint64_t{0});
  std::stable_sort(s.vertex_at.begin(), s.vertex_at.end(),
                   [&](std::uint64_t a, std::uint64_t b) { return freq[a] < freq[b]; });
  s.rank.resize(alphabet_size);
  for (std::uint64_t r = 0; r < alphabet_size; ++r) s.rank[s.vertex_at[r]] = r;
  return s;
}

BuildOutput build(const Dag& d, const SigmaRank& sigma) {
  const std::uint64_t n = d.n();
  const std::uint64_t M = d.out_degree_param();
  const std::uint64_t vertices = d.vertex_count();
  if (sigma.rank.size() != vertices) throw std::invalid_argument("sigma rank size mismatch");

  std::vector<Vertex> parent_old(vertices, 0);
  std::vector<std::vector<Vertex>> children(vertices);
  for (Vertex v = 1; v <= n; ++v) {
    const auto block = d.block(v);
    parent_old[v] = *std::min_element(block.begin(), block.end(), [&](Vertex a, Vertex b) {
      return sigma.rank[a] < sigma.rank[b];
    });
    children[parent_old[v]].push_back(v);
  }

  BuildOutput out;
  out.n = n;
  out.M = M;
  out.relabel.assign(vertices, 0);
  out.inverse.reserve(vertices);
  std::vector<Vertex> stack{0};
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    out.relabel[v] = out.inverse.size();
    out.inverse.push_back(v);
    for (auto it = children[v].rbegin(); it != children[v].rend(); ++it) stack.push_back(*it);
  }

  out.tree_parent.assign(vertices, 0);
  out.a_prime.reserve(n * (M - 1));
  for (Vertex j = 1; j <= n; ++j) {
    const Vertex old = out.inverse[j];
    out.tree_parent[j] = out.relabel[parent_old[old]];
    bool dropped = false;
    for (Vertex w : d.block(old)) {
      if (!dropped && w == parent_old[old]) {
        dropped = true;
        continue;
      }
      out.a_prime.push_back(out.relabel[w]);
    }
  }
  return out;
}

BuildOutput build(const Dag& d, TieBreak tie) { return build(d, sigma_rank(d, tie)); }

std::vector<Vertex> build_labelled(const Dag& d) { return adjacency_string(d); }

}  // namespace upag
