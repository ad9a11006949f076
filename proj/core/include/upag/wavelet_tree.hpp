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

#include "upag/bit_vector.hpp"

namespace upag {

// Balanced, pointerless wavelet tree over symbols [0..sigma).
//
// Each symbol is coded with ceil(lg sigma) bits, most significant first. The
// bitvectors of all nodes on one level are concatenated in level order into
// a single BitVector; a node keeps the same [start, end) range on every level
// below it, so navigation needs nothing but rank on the level bitvectors.
class WaveletTree {
 public:
  WaveletTree() = default;

  // Throws std::invalid_argument if some symbol is >= sigma.
  WaveletTree(std::span<const std::uint64_t> seq, std::uint64_t sigma,
              BitEncoding encoding = BitEncoding::kRrr, DirectoryParams params = {});

  // Reassembles a tree from its level bitvectors (deserialization). Every
  // level must have length `length`.
  static WaveletTree from_levels(std::uint64_t sigma, std::uint64_t length,
                                 std::vector<BitVector> levels);

  std::uint64_t size() const noexcept { return length_; }
  std::uint64_t sigma() const noexcept { return sigma_; }
  unsigned depth() const noexcept { return static_cast<unsigned>(levels_.size()); }
  const BitVector& level(unsigned l) const { return levels_.at(l); }

  // 1-based, as for BitVector.
  std::uint64_t access(std::uint64_t i) const;
  std::uint64_t rank(std::uint64_t c, std::uint64_t i) const;
  std::uint64_t select(std::uint64_t c, std::uint64_t k) const;
  // As select, but nullopt instead of throwing when k is 0 or too large.
  std::optional<std::uint64_t> try_select(std::uint64_t c, std::uint64_t k) const;
  // rank(c, to) - rank(c, from) in one descent; from <= to.
  std::uint64_t count_range(std::uint64_t c, std::uint64_t from, std::uint64_t to) const;

  struct NodeStats {
    std::uint64_t internal_nodes = 0;    // nonempty nodes above the leaves
    double sum_lg_binomial = 0.0;        // sum over those of lg binom(len, ones)
    std::uint64_t distinct_symbols = 0;  // nonempty leaves
    std::uint64_t max_symbol = 0;        // largest symbol present
    double h0_bits = 0.0;                // from leaf sizes
  };
  NodeStats node_stats() const;

  // payload/directory summed over levels; entropy bound H0(S).
  SpaceBits space() const;

  std::vector<std::uint64_t> decode() const;

 private:
  static unsigned depth_for(std::uint64_t sigma);
  void check_symbol(std::uint64_t c) const;

  std::uint64_t sigma_ = 0;
  std::uint64_t length_ = 0;
  std::vector<BitVector> levels_;
  double h0_bits_ = 0.0;
};

}  // namespace upag
