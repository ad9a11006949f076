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

#include "upag/graph_model.hpp"

#include <algorithm>
#include <string>

#include "upag/errors.hpp"

namespace upag {

Dag::Dag(std::uint64_t n, std::uint64_t M, std::vector<Vertex> targets)
    : n_(n), m_(M), targets_(std::move(targets)) {
  if (M == 0) throw MalformedGraph("out-degree parameter M must be >= 1");
  if (n == 0) throw MalformedGraph("graph must have at least one arriving vertex");
  if (targets_.size() != n * M) {
    throw MalformedGraph("expected " + std::to_string(n * M) + " targets, got " +
                         std::to_string(targets_.size()));
  }
  in_degree_.assign(n + 1, 0);
  for (std::uint64_t i = 0; i < targets_.size(); ++i) {
    const std::uint64_t t = i / M + 1;
    const Vertex w = targets_[i];
    if (w >= t) {
      throw MalformedGraph("vertex " + std::to_string(t) + " points to " + std::to_string(w) +
                           ", which has not arrived yet");
    }
    ++in_degree_[w];
  }
}

std::span<const Vertex> Dag::block(std::uint64_t t) const {
  if (t == 0) return {};
  if (t > n_) throw std::out_of_range("block index " + std::to_string(t) + " > n");
  return std::span<const Vertex>(targets_).subspan((t - 1) * m_, m_);
}

bool Dag::simple_beyond_seed() const {
  std::vector<Vertex> scratch;
  for (std::uint64_t t = 2; t <= n_; ++t) {
    auto b = block(t);
    scratch.assign(b.begin(), b.end());
    std::sort(scratch.begin(), scratch.end());
    if (std::adjacent_find(scratch.begin(), scratch.end()) != scratch.end()) return false;
  }
  return true;
}

UndirectedMultigraph::UndirectedMultigraph(std::uint64_t vertex_count,
                                           std::vector<UndirectedEdge> edges)
    : edges_(std::move(edges)), degree_(vertex_count, 0) {
  for (const auto& e : edges_) {
    if (e.a >= vertex_count || e.b >= vertex_count) {
      throw MalformedGraph("edge endpoint out of range");
    }
    ++degree_[e.a];
    ++degree_[e.b];
  }
}

std::vector<Vertex> adjacency_string(const Dag& g) {
  return {g.targets().begin(), g.targets().end()};
}

UndirectedMultigraph undirect(const Dag& g) {
  std::vector<UndirectedEdge> edges;
  edges.reserve(g.edge_count());
  const std::uint64_t M = g.out_degree_param();
  for (std::uint64_t i = 0; i < g.targets().size(); ++i) {
    edges.push_back({i / M + 1, g.targets()[i]});
  }
  return UndirectedMultigraph(g.vertex_count(), std::move(edges));
}

}  // namespace upag
