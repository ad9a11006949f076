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

#include "upag/compressed_graph.hpp"

#include <optional>
#include <stdexcept>
#include <string>

namespace upag {

CompressedGraph CompressedGraph::from_build_output(const BuildOutput& b,
                                                   const GraphBuildOptions& opt) {
  CompressedGraph g;
  g.mode_ = GraphMode::kUnlabelled;
  g.tie_break_ = opt.tie_break;
  g.n_ = b.n;
  g.m_ = b.M;
  g.tree_ = OrdinalTree::from_parents(b.tree_parent);
  g.wt_ = WaveletTree(b.a_prime, b.n + 1, opt.encoding, opt.params);
  if (opt.keep_relabel) g.relabel_ = b.relabel;
  return g;
}

CompressedGraph CompressedGraph::build(const Dag& d, const GraphBuildOptions& opt) {
  return from_build_output(upag::build(d, opt.tie_break), opt);
}

CompressedGraph CompressedGraph::build_labelled(const Dag& d, const GraphBuildOptions& opt) {
  CompressedGraph g;
  g.mode_ = GraphMode::kLabelled;
  g.n_ = d.n();
  g.m_ = d.out_degree_param();
  g.wt_ = WaveletTree(upag::build_labelled(d), d.n() + 1, opt.encoding, opt.params);
  return g;
}

std::uint64_t CompressedGraph::stride() const noexcept {
  return mode_ == GraphMode::kLabelled ? m_ : m_ - 1;
}

void CompressedGraph::check_vertex(Vertex v) const {
  if (v > n_) {
    throw std::out_of_range("vertex " + std::to_string(v) + " outside [0.." + std::to_string(n_) +
                            "]");
  }
}

Vertex CompressedGraph::out_neighbour(Vertex v, std::uint64_t i) const {
  check_vertex(v);
  if (v == 0) throw std::out_of_range("vertex 0 has no out-neighbours");
  if (i == 0 || i > m_) {
    throw std::out_of_range("out-neighbour index " + std::to_string(i) + " outside [1.." +
                            std::to_string(m_) + "]");
  }
  if (mode_ == GraphMode::kLabelled) return wt_.access((v - 1) * m_ + i);
  if (i == 1) return tree_.parent(v);
  return wt_.access((v - 1) * (m_ - 1) + i - 1);
}

std::uint64_t CompressedGraph::degree_in(Vertex v) const {
  check_vertex(v);
  const std::uint64_t occurrences = wt_.size() == 0 ? 0 : wt_.rank(v, wt_.size());
  if (mode_ == GraphMode::kLabelled) return occurrences;
  return tree_.degree(v) + occurrences;
}

std::uint64_t CompressedGraph::degree_out(Vertex v) const {
  check_vertex(v);
  return v == 0 ? 0 : m_;
}

Vertex CompressedGraph::in_neighbour(Vertex v, std::uint64_t i) const {
  check_vertex(v);
  const std::uint64_t children = mode_ == GraphMode::kLabelled ? 0 : tree_.degree(v);
  if (i == 0) throw std::out_of_range("in-neighbour index must be >= 1");
  if (i <= children) return tree_.child(v, i);
  const auto pos = wt_.size() == 0 ? std::nullopt : wt_.try_select(v, i - children);
  if (!pos) {
    throw std::out_of_range("in-neighbour index " + std::to_string(i) + " exceeds in-degree " +
                            std::to_string(degree_in(v)) + " of vertex " + std::to_string(v));
  }
  const std::uint64_t k = stride();
  return (*pos + k - 1) / k;
}

bool CompressedGraph::block_contains(Vertex owner, Vertex target) const {
  const std::uint64_t k = stride();
  if (owner == 0 || k == 0) return false;
  // Arrival labels point backwards; preorder labels need not.
  if (mode_ == GraphMode::kLabelled && target >= owner) return false;
  return wt_.count_range(target, (owner - 1) * k, owner * k) >= 1;
}

bool CompressedGraph::adjacent(Vertex u, Vertex v) const {
  check_vertex(u);
  check_vertex(v);
  if (mode_ == GraphMode::kUnlabelled) {
    if (v != 0 && tree_.parent(v) == u) return true;
    if (u != 0 && tree_.parent(u) == v) return true;
  }
  return block_contains(v, u) || block_contains(u, v);
}

SpaceReport CompressedGraph::space_report() const {
  SpaceReport r;
  if (mode_ == GraphMode::kUnlabelled) {
    const SpaceBits t = tree_.space();
    r.tree_payload_bits = t.payload_bits;
    r.tree_directory_bits = t.directory_bits;
  }
  const SpaceBits w = wt_.space();
  r.wt_payload_bits = w.payload_bits;
  r.wt_directory_bits = w.directory_bits;
  // magic, version, flags, M, n, tree length, sigma, length, crc; two
  // lengths per wavelet-tree level.
  r.metadata_bits = 32 + 16 + 16 + 64 * 5 + 32 + 128 * std::uint64_t{wt_.depth()};
  r.total_bits = r.tree_payload_bits + r.tree_directory_bits + r.wt_payload_bits +
                 r.wt_directory_bits + r.metadata_bits;
  const auto stats = wt_.node_stats();
  r.wt_h0_bits = stats.h0_bits;
  r.distinct_symbols = stats.distinct_symbols;
  return r;
}

SpaceReport CompressedGraph::space_report(const Dag& source) const {
  SpaceReport r = space_report();
  r.bounds = bounds_report(source);
  return r;
}

std::string relabel_text(std::span<const Vertex> relabel) {
  std::string out;
  for (std::uint64_t v = 0; v < relabel.size(); ++v) {
    out += std::to_string(v);
    out += ' ';
    out += std::to_string(relabel[v]);
    out += '\n';
  }
  return out;
}

}  // namespace upag
