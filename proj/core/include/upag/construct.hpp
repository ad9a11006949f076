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

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "upag/graph_model.hpp"

namespace upag {

enum class PeelOrder {
  kLowestIndex,  // smallest eligible vertex label first
  kRandom,       // uniformly random eligible vertex (diagnostics)
};

struct PeelResult {
  Dag dag;
  // relabel[old] = arrival index in `dag`. Identity when the input labels
  // already follow arrival order.
  std::vector<Vertex> relabel;
  bool relabelled = false;
};

// Recovers edge orientations by repeatedly removing a vertex of residual
// degree exactly M (never vertex 0) and orienting its remaining edges away
// from it. Out-edges keep the relative order of the input edge list. Vertices
// are then numbered by the smallest-label-first linear extension of the
// recovered DAG. Throws NotPeelable if the process gets stuck.
PeelResult peel_with_labels(const UndirectedMultigraph& u, std::uint64_t M,
                            PeelOrder order = PeelOrder::kLowestIndex, std::uint64_t seed = 0);

// peel_with_labels(...).dag.
Dag peel(const UndirectedMultigraph& u, std::uint64_t M);

// Re-peels `trials` times in random order; false if any run yields a DAG
// different from the lowest-index run.
bool peel_is_unambiguous(const UndirectedMultigraph& u, std::uint64_t M, unsigned trials,
                         std::uint64_t seed);

enum class TieBreak {
  kAscendingIndex,   // equal in-degrees ranked by vertex index
  kFirstOccurrence,  // ... by first position in A(G); vertices never targeted last
  kCustom,           // ... by a caller-supplied priority per vertex
};

// Bijection vertex -> [0..n], monotone in in-degree.
struct SigmaRank {
  std::vector<std::uint64_t> rank;    // rank[v]
  std::vector<Vertex> vertex_at;      // inverse
  TieBreak tie_break = TieBreak::kAscendingIndex;
};

SigmaRank sigma_rank(const Dag& d, TieBreak tie = TieBreak::kAscendingIndex,
                     std::span<const std::uint64_t> custom_priority = {});

// Ranks symbols of a plain sequence by frequency; ties by ascending symbol.
// rank is indexed by symbol value, so symbols must be < alphabet_size.
SigmaRank sigma_rank_of_sequence(std::span<const std::uint64_t> seq, std::uint64_t alphabet_size);

struct BuildOutput {
  std::uint64_t n = 0;
  std::uint64_t M = 0;
  // tree_parent[j] for preorder label j >= 1; tree_parent[0] == 0 (root).
  std::vector<Vertex> tree_parent;
  // Length n(M-1); block j (1-based) holds relabelled vertex j's out-neighbours
  // other than one copy of its tree parent, in stored order.
  std::vector<Vertex> a_prime;
  std::vector<Vertex> relabel;  // old -> preorder label
  std::vector<Vertex> inverse;  // preorder label -> old
};

// Minimal-sigma parent per vertex, preorder relabelling (children ordered by
// ascending original index), and A'.
BuildOutput build(const Dag& d, const SigmaRank& sigma);
BuildOutput build(const Dag& d, TieBreak tie = TieBreak::kAscendingIndex);

// A(G) unreduced, the only input of the labelled representation.
std::vector<Vertex> build_labelled(const Dag& d);

}  // namespace upag
