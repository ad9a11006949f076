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

#pragma once

// Shared instances and hand-rolled random generators for the tests.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "upag/bit_array.hpp"
#include "upag/graph_model.hpp"
#include "upag/pa_gen.hpp"
#include "upag/rng.hpp"

namespace upag::testing {

// M = 3, n = 4 example with P[G] = 5/864.
inline Dag four_vertex_example() {
  return Dag(4, 3, {0, 0, 0, 0, 0, 1, 0, 1, 1, 0, 1, 3});
}

// M = 3, n = 5 example whose parent tree is 0-1, 1-2, 1-3, 3-4, 3-5.
inline Dag five_vertex_example() {
  return Dag(5, 3, {0, 0, 0, 1, 1, 1, 1, 1, 1, 3, 2, 2, 3, 4, 4});
}

// Seed that makes the generator emit the four-vertex example's blocks (as
// multisets) for M = 3, n = 4. Found by search and pinned.
inline constexpr std::uint64_t kFourVertexSeed = 130;

// Uniform M-out-regular DAG: every target of block t uniform in [0..t-1].
inline Dag random_dag(Rng& rng, std::uint64_t M, std::uint64_t n) {
  std::vector<Vertex> targets;
  targets.reserve(n * M);
  for (std::uint64_t t = 1; t <= n; ++t) {
    for (std::uint64_t k = 0; k < M; ++k) targets.push_back(rng.below(t));
  }
  return Dag(n, M, std::move(targets));
}

// Like random_dag, but blocks t >= 2 hold distinct targets whenever t >= M.
inline Dag random_simple_dag(Rng& rng, std::uint64_t M, std::uint64_t n) {
  std::vector<Vertex> targets(M, 0);
  for (std::uint64_t t = 2; t <= n; ++t) {
    std::vector<Vertex> pool(t);
    for (Vertex v = 0; v < t; ++v) pool[v] = v;
    for (std::uint64_t k = 0; k < M; ++k) {
      if (k >= t) {
        targets.push_back(rng.below(t));
        continue;
      }
      const auto j = k + rng.below(t - k);
      std::swap(pool[k], pool[j]);
      targets.push_back(pool[k]);
    }
  }
  return Dag(n, M, std::move(targets));
}

inline PaGraph random_pa(std::uint64_t M, std::uint64_t n, std::uint64_t seed) {
  GenConfig cfg;
  cfg.M = M;
  cfg.n = n;
  cfg.rng_seed = seed;
  cfg.exact_cutoff = 0;
  return generate(cfg);
}

inline BitArray random_bits(Rng& rng, std::uint64_t n, std::uint64_t ones_per_1024) {
  BitArray b;
  for (std::uint64_t i = 0; i < n; ++i) b.push_back(rng.below(1024) < ones_per_1024);
  return b;
}

inline std::vector<std::uint64_t> random_sequence(Rng& rng, std::uint64_t len,
                                                  std::uint64_t sigma) {
  std::vector<std::uint64_t> s(len);
  for (auto& c : s) c = rng.below(sigma);
  return s;
}

// Random ordered tree, parents in preorder: each new node hangs off some
// node on the current rightmost path.
inline std::vector<std::uint64_t> random_preorder_tree(Rng& rng, std::uint64_t nodes) {
  std::vector<std::uint64_t> parent(nodes, 0);
  std::vector<std::uint64_t> path{0};
  for (std::uint64_t v = 1; v < nodes; ++v) {
    // Bias toward deep attachment now and then so long paths appear.
    const std::uint64_t keep = rng.below(4) == 0 ? path.size() : 1 + rng.below(path.size());
    path.resize(keep);
    parent[v] = path.back();
    path.push_back(v);
  }
  return parent;
}

}  // namespace upag::testing
