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
#include <span>
#include <vector>

#include "upag/bit_array.hpp"
#include "upag/bit_vector.hpp"

namespace upag {

// Succinct ordinal tree in depth-first unary degree sequence (DFUDS) form.
//
// The parenthesis string is "(" followed, for every node in preorder, by one
// "(" per child and a closing ")"; "(" is stored as 1. It is balanced and has
// length 2 * node_count(). Nodes are named by their preorder rank, the root
// is 0. Children are numbered 1..degree(v) from left to right.
//
// parent/child need matching-parenthesis searches; these use a min-excess
// tree over fixed 1024-bit blocks of the sequence.
class OrdinalTree {
 public:
  OrdinalTree() = default;

  // parent[v] for every preorder node v (parent[0] is ignored). Throws
  // std::invalid_argument unless this is a preorder: each parent[v] must lie
  // on the path from the root to node v-1.
  static OrdinalTree from_parents(std::span<const std::uint64_t> parent);

  // Throws std::invalid_argument for an empty or unbalanced sequence.
  static OrdinalTree from_parentheses(BitArray bits);

  std::uint64_t node_count() const noexcept { return bits_.size() / 2; }
  const BitArray& parentheses() const noexcept { return raw_; }

  // Throws std::out_of_range for the root or v >= node_count().
  std::uint64_t parent(std::uint64_t v) const;
  std::uint64_t degree(std::uint64_t v) const;
  // i in [1..degree(v)]; std::out_of_range otherwise.
  std::uint64_t child(std::uint64_t v, std::uint64_t i) const;

  // payload = 2 * node_count(); entropy bound is the same 2n.
  SpaceBits space() const;

  static constexpr std::uint64_t kExcessBlockBits = 1024;

 private:
  void build_excess_index();
  void check_node(std::uint64_t v) const;

  // Excess after position p (inclusive), 0-based.
  std::int64_t excess(std::int64_t p) const;
  std::uint64_t find_close(std::uint64_t open) const;
  std::uint64_t find_open(std::uint64_t close) const;
  // First position in [from, to) whose excess is <= target, or `to`.
  std::uint64_t scan_forward(std::uint64_t from, std::uint64_t to, std::int64_t before,
                             std::int64_t target) const;
  // Last position in [from, to) whose excess is <= target, or -1.
  std::int64_t scan_backward(std::uint64_t from, std::uint64_t to, std::int64_t target) const;
  std::int64_t first_block_at_or_after(std::uint64_t block, std::int64_t target) const;
  std::int64_t last_block_at_or_before(std::int64_t block, std::int64_t target) const;

  BitArray raw_;
  BitVector bits_;
  std::uint64_t leaves_ = 0;              // leaf count of the min tree (power of two)
  std::vector<std::int32_t> min_excess_;  // heap-ordered min-excess tree over blocks
};

}  // namespace upag
