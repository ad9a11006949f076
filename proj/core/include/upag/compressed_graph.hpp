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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ranges>
#include <span>
#include <string>
#include <vector>

#include "upag/bit_vector.hpp"
#include "upag/construct.hpp"
#include "upag/entropy.hpp"
#include "upag/graph_model.hpp"
#include "upag/ordinal_tree.hpp"
#include "upag/wavelet_tree.hpp"

namespace upag {

enum class GraphMode : std::uint8_t {
  kUnlabelled,  // parent tree + wavelet tree over A', preorder vertex ids
  kLabelled,    // wavelet tree over the full A, original vertex ids
};

struct SpaceReport {
  std::uint64_t tree_payload_bits = 0;
  std::uint64_t tree_directory_bits = 0;
  std::uint64_t wt_payload_bits = 0;
  std::uint64_t wt_directory_bits = 0;  // includes RRR class fields
  std::uint64_t metadata_bits = 0;      // fixed header fields of the file format
  std::uint64_t total_bits = 0;

  double wt_h0_bits = 0.0;  // H0 of the stored sequence
  std::uint64_t distinct_symbols = 0;
  std::optional<BoundsReport> bounds;  // present when the source DAG is known

  std::uint64_t payload_bits() const noexcept { return tree_payload_bits + wt_payload_bits; }
  std::uint64_t directory_bits() const noexcept {
    return tree_directory_bits + wt_directory_bits;
  }
  double directory_fraction() const noexcept {
    const auto p = payload_bits();
    return p == 0 ? 0.0 : static_cast<double>(directory_bits()) / static_cast<double>(p);
  }
};

struct GraphBuildOptions {
  TieBreak tie_break = TieBreak::kAscendingIndex;
  BitEncoding encoding = BitEncoding::kRrr;
  DirectoryParams params = {};
  bool keep_relabel = true;
};

// Immutable compressed PA graph. All queries are const and thread-safe.
//
// Unlabelled mode addresses vertices by preorder label; the map from input
// labels is kept as an optional sidecar and not counted in space_report().
class CompressedGraph {
 public:
  CompressedGraph() = default;

  static CompressedGraph build(const Dag& d, const GraphBuildOptions& opt = {});
  static CompressedGraph from_build_output(const BuildOutput& b, const GraphBuildOptions& opt = {});
  static CompressedGraph build_labelled(const Dag& d, const GraphBuildOptions& opt = {});

  GraphMode mode() const noexcept { return mode_; }
  // Tie-break used to pick tree parents (unlabelled mode).
  TieBreak tie_break() const noexcept { return tie_break_; }
  std::uint64_t n() const noexcept { return n_; }
  std::uint64_t M() const noexcept { return m_; }
  std::uint64_t vertex_count() const noexcept { return n_ + 1; }

  // v in [1..n], i in [1..M]; std::out_of_range otherwise.
  Vertex out_neighbour(Vertex v, std::uint64_t i) const;
  // i in [1..degree_in(v)].
  Vertex in_neighbour(Vertex v, std::uint64_t i) const;
  std::uint64_t degree_in(Vertex v) const;
  std::uint64_t degree_out(Vertex v) const;
  std::uint64_t degree_total(Vertex v) const { return degree_in(v) + degree_out(v); }
  bool adjacent(Vertex u, Vertex v) const;

  auto neighbours_out(Vertex v) const {
    return std::views::iota(std::uint64_t{1}, degree_out(v) + 1) |
           std::views::transform([this, v](std::uint64_t i) { return out_neighbour(v, i); });
  }
  auto neighbours_in(Vertex v) const {
    return std::views::iota(std::uint64_t{1}, degree_in(v) + 1) |
           std::views::transform([this, v](std::uint64_t i) { return in_neighbour(v, i); });
  }

  const OrdinalTree& tree() const noexcept { return tree_; }
  const WaveletTree& sequence() const noexcept { return wt_; }

  // old label -> stored label, when known.
  const std::optional<std::vector<Vertex>>& relabel() const noexcept { return relabel_; }

  SpaceReport space_report() const;
  SpaceReport space_report(const Dag& source) const;

  std::vector<std::byte> serialize() const;
  // Throws FormatError; the relabel sidecar is not part of the format.
  static CompressedGraph deserialize(std::span<const std::byte> bytes);

  static constexpr std::uint16_t kFormatVersion = 1;

 private:
  void check_vertex(Vertex v) const;
  // Positions (v-1)K+1 .. vK of the stored sequence, K = stride().
  std::uint64_t stride() const noexcept;
  bool block_contains(Vertex block_owner, Vertex target) const;

  GraphMode mode_ = GraphMode::kUnlabelled;
  TieBreak tie_break_ = TieBreak::kAscendingIndex;
  std::uint64_t n_ = 0;
  std::uint64_t m_ = 0;
  OrdinalTree tree_;
  WaveletTree wt_;
  std::optional<std::vector<Vertex>> relabel_;
};

// Writes "old new" per line for every vertex.
std::string relabel_text(std::span<const Vertex> relabel);

}  // namespace upag
