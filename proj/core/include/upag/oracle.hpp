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

// Brute-force references. Nothing here calls into construct/, the succinct
// primitives or pa_gen's probability code, so the answers are an
// independent cross-check of those paths.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "upag/compressed_graph.hpp"
#include "upag/construct.hpp"
#include "upag/graph_model.hpp"

namespace upag {

// Explicit adjacency lists under the same labelling and ordering
// conventions as CompressedGraph.
class NaiveGraph {
 public:
  // Preorder labels from the minimal-in-degree parent tree.
  static NaiveGraph unlabelled(const Dag& d, TieBreak tie = TieBreak::kAscendingIndex);
  // Original labels; in-lists in position order of A.
  static NaiveGraph labelled(const Dag& d);

  std::uint64_t n() const noexcept { return out_.size() - 1; }
  const std::vector<Vertex>& out(Vertex v) const { return out_.at(v); }
  const std::vector<Vertex>& in(Vertex v) const { return in_.at(v); }
  std::uint64_t degree_in(Vertex v) const { return in_.at(v).size(); }
  std::uint64_t degree_out(Vertex v) const { return out_.at(v).size(); }
  bool adjacent(Vertex u, Vertex v) const;
  // old label -> stored label
  const std::vector<Vertex>& relabel() const noexcept { return relabel_; }
  // tree parent per stored label (unlabelled only; [0] = 0)
  const std::vector<Vertex>& parent() const noexcept { return parent_; }

 private:
  std::vector<std::vector<Vertex>> out_;
  std::vector<std::vector<Vertex>> in_;
  std::vector<Vertex> relabel_;
  std::vector<Vertex> parent_;
};

struct CheckReport {
  std::uint64_t queries = 0;
  std::optional<std::string> first_divergence;
  bool ok() const noexcept { return !first_divergence; }
};

// Every vertex, every index, every ordered pair, plus the out-of-range
// boundary of each list.
CheckReport check_exhaustive(const CompressedGraph& g, const NaiveGraph& naive);
// `count` random queries spread across the operations.
CheckReport check_sampled(const CompressedGraph& g, const NaiveGraph& naive, std::uint64_t count,
                          std::uint64_t seed);

struct AdmissibleOrders {
  std::uint64_t count = 0;
  double min_bits = 0.0;
  double max_bits = 0.0;
  bool exact_equal = true;  // P[G] identical as a rational across orders
};

inline constexpr std::uint64_t kMaxEnumerationN = 8;

// Enumerates arrival orders that are linear extensions of d (v0 first) and
// evaluates lg(1/P) for each relabelled graph. std::invalid_argument if
// n > kMaxEnumerationN.
AdmissibleOrders admissible_orders(const Dag& d);

// P[G] from the model by direct enumeration of each block's orderings.
Rational naive_probability(const Dag& d);

// H0 in bits, straight from the definition.
double naive_h0_bits(std::span<const std::uint64_t> seq);

}  // namespace upag
