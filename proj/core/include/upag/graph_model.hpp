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
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace upag {

using Vertex = std::uint64_t;
using Rational = boost::multiprecision::cpp_rational;

// An M-out-regular DAG in arrival order.
//
// Vertices are v0..vn. Vertex t >= 1 owns block t of the flat target array,
// i.e. targets()[(t-1)*M .. t*M), and every target in block t is < t. Vertex 0
// has no out-edges. Block 1 is therefore always M copies of 0.
class Dag {
 public:
  Dag() = default;

  // Throws MalformedGraph if M == 0, n == 0, the size is not n*M, or some
  // target in block t is >= t.
  Dag(std::uint64_t n, std::uint64_t M, std::vector<Vertex> targets);

  std::uint64_t n() const noexcept { return n_; }
  std::uint64_t out_degree_param() const noexcept { return m_; }
  std::uint64_t vertex_count() const noexcept { return n_ + 1; }
  std::uint64_t edge_count() const noexcept { return n_ * m_; }

  std::span<const Vertex> targets() const noexcept { return targets_; }

  // Out-neighbours of v_t in stored order; empty for t == 0.
  std::span<const Vertex> block(std::uint64_t t) const;

  std::uint64_t in_degree(Vertex v) const { return in_degree_.at(v); }
  std::span<const std::uint64_t> in_degrees() const noexcept { return in_degree_; }

  // True iff no block t >= 2 repeats a target.
  bool simple_beyond_seed() const;

  friend bool operator==(const Dag& a, const Dag& b) {
    return a.n_ == b.n_ && a.m_ == b.m_ && a.targets_ == b.targets_;
  }

 private:
  std::uint64_t n_ = 0;
  std::uint64_t m_ = 0;
  std::vector<Vertex> targets_;
  std::vector<std::uint64_t> in_degree_;
};

// Exact and floating information content lg(1/P[G]).
struct LogProb {
  std::optional<Rational> exact;  // P[G] itself, when computed
  double bits = 0.0;
};

// A labelled preferential-attachment graph: a Dag whose vertex indices are
// the arrival times, plus its probability once computed.
struct PaGraph {
  Dag dag;
  std::optional<LogProb> log_prob;
};

struct UndirectedEdge {
  Vertex a;
  Vertex b;
  friend bool operator==(const UndirectedEdge&, const UndirectedEdge&) = default;
};

class UndirectedMultigraph {
 public:
  UndirectedMultigraph() = default;
  UndirectedMultigraph(std::uint64_t vertex_count, std::vector<UndirectedEdge> edges);

  std::uint64_t vertex_count() const noexcept { return degree_.size(); }
  std::uint64_t edge_count() const noexcept { return edges_.size(); }
  std::span<const UndirectedEdge> edges() const noexcept { return edges_; }
  std::uint64_t degree(Vertex v) const { return degree_.at(v); }
  std::span<const std::uint64_t> degrees() const noexcept { return degree_; }

 private:
  std::vector<UndirectedEdge> edges_;
  std::vector<std::uint64_t> degree_;
};

// A(G): all blocks concatenated in arrival order.
std::vector<Vertex> adjacency_string(const Dag& g);
inline std::vector<Vertex> adjacency_string(const PaGraph& g) { return adjacency_string(g.dag); }

// Drops orientation; edge i of the result is the i-th entry of A(G).
UndirectedMultigraph undirect(const Dag& g);

}  // namespace upag
