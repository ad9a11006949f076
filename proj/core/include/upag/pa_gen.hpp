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

#include "upag/graph_model.hpp"
#include "upag/rng.hpp"

namespace upag {

inline constexpr std::uint64_t kDefaultExactCutoff = 64;

struct GenConfig {
  std::uint64_t M = 1;
  std::uint64_t n = 1;
  std::uint64_t rng_seed = 0;
  // generate() attaches an exact P[G] when n <= exact_cutoff.
  std::uint64_t exact_cutoff = kDefaultExactCutoff;
};

// Incremental Barabási-Albert process. Starts at G_1 (M parallel edges
// v1 -> v0). Degree-proportional sampling draws a uniform entry of the
// endpoint list, which holds each vertex once per incident edge end.
class PaGenerator {
 public:
  PaGenerator(std::uint64_t M, std::uint64_t seed);

  std::uint64_t M() const noexcept { return m_; }
  // Index of the most recently added vertex (1 right after construction).
  std::uint64_t time() const noexcept { return degree_.size() - 1; }
  std::span<const std::uint64_t> degrees() const noexcept { return degree_; }

  // M i.i.d. draws for the next vertex from the current graph; not committed.
  std::vector<Vertex> draw_targets();
  void add_vertex(std::span<const Vertex> targets);
  void step() { add_vertex(draw_targets()); }

  Dag snapshot() const;

 private:
  std::uint64_t m_;
  Rng rng_;
  std::vector<Vertex> endpoints_;
  std::vector<Vertex> targets_;
  std::vector<std::uint64_t> degree_;
};

// Throws std::invalid_argument for M == 0 or n == 0.
PaGraph generate(const GenConfig& cfg);

// Attachment law of step t (2 <= t <= n) given G_{t-1}, and what block t
// actually drew.
struct StepDistribution {
  std::uint64_t t = 0;
  std::uint64_t denominator = 0;            // 2(t-1)M
  std::vector<std::uint64_t> degree;        // d_{t-1}(v_i), i in [0..t-1]
  std::vector<std::uint64_t> multiplicity;  // C^(t)_i

  double probability(Vertex i) const {
    return static_cast<double>(degree.at(i)) / static_cast<double>(denominator);
  }
};

StepDistribution step_distribution(const Dag& g, std::uint64_t t);

// lg(1/P[G]) by replaying the degree evolution. With exact = true the
// probability is also multiplied out as a rational; that requires
// g.n() <= exact_cutoff (std::invalid_argument otherwise).
LogProb log_prob(const Dag& g, bool exact, std::uint64_t exact_cutoff = kDefaultExactCutoff);

// Information content contributed by step t alone; log_prob is the sum of
// these over t = 2..n.
double step_log_prob_bits(const Dag& g, std::uint64_t t);

// Exact P[N(v_t) | G_{t-1}] as a rational.
Rational step_probability(const Dag& g, std::uint64_t t);

// lg(x) for a positive rational, accurate for very large numerators and
// denominators.
double lg(const Rational& x);

struct ProbabilityGap {
  double lhs_bits = 0.0;     // lg(1/P[G])
  double h_deg_bits = 0.0;   // H_deg(G)
  double gap = 0.0;          // lhs - h_deg
  double normalized_gap = 0.0;  // gap / (n M lg(M+1))
  bool simple_beyond_seed = true;  // false: gap reported for a multigraph
};

ProbabilityGap probability_gap(const Dag& g);

}  // namespace upag
