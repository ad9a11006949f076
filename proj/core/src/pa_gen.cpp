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

#include "upag/pa_gen.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "upag/entropy.hpp"
#include "upag/errors.hpp"

namespace upag {

using boost::multiprecision::cpp_int;

namespace {

// (vertex, multiplicity) pairs of one block, ordered by vertex.
std::vector<std::pair<Vertex, std::uint64_t>> multiplicities(std::span<const Vertex> block) {
  std::vector<Vertex> sorted(block.begin(), block.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::pair<Vertex, std::uint64_t>> out;
  for (Vertex v : sorted) {
    if (!out.empty() && out.back().first == v) {
      ++out.back().second;
    } else {
      out.emplace_back(v, 1);
    }
  }
  return out;
}

cpp_int factorial(std::uint64_t k) {
  cpp_int r = 1;
  for (std::uint64_t i = 2; i <= k; ++i) r *= i;
  return r;
}

double lg_int(const cpp_int& x) {
  const std::size_t top = boost::multiprecision::msb(x);
  if (top < 62) return std::log2(x.convert_to<double>());
  const std::size_t shift = top - 61;
  cpp_int head = x >> shift;
  return std::log2(head.convert_to<double>()) + static_cast<double>(shift);
}

// Degrees of G_1: the seed's M parallel edges.
std::vector<std::uint64_t> seed_degrees(std::uint64_t n, std::uint64_t M) {
  std::vector<std::uint64_t> d(n + 1, 0);
  d[0] = M;
  d[1] = M;
  return d;
}

void apply_block(std::vector<std::uint64_t>& degree, std::uint64_t t,
                 std::span<const Vertex> block) {
  degree[t] += block.size();
  for (Vertex w : block) ++degree[w];
}

double step_bits(const std::vector<std::uint64_t>& degree, std::uint64_t t, std::uint64_t M,
                 std::span<const Vertex> block) {
  const double total = 2.0 * static_cast<double>(t - 1) * static_cast<double>(M);
  double bits = 0.0;
  double lg_multinomial = lg_factorial(M);
  for (auto [v, c] : multiplicities(block)) {
    bits += static_cast<double>(c) * std::log2(total / static_cast<double>(degree[v]));
    lg_multinomial -= lg_factorial(c);
  }
  return bits - lg_multinomial;
}

Rational step_rational(const std::vector<std::uint64_t>& degree, std::uint64_t t,
                       std::uint64_t M, std::span<const Vertex> block) {
  cpp_int num = factorial(M);
  cpp_int den = 1;
  const cpp_int total = cpp_int(2) * (t - 1) * M;
  for (auto [v, c] : multiplicities(block)) {
    den *= factorial(c);
    num *= boost::multiprecision::pow(cpp_int(degree[v]), static_cast<unsigned>(c));
  }
  den *= boost::multiprecision::pow(total, static_cast<unsigned>(M));
  return Rational(num, den);
}

}  // namespace

PaGenerator::PaGenerator(std::uint64_t M, std::uint64_t seed) : m_(M), rng_(seed) {
  if (M == 0) throw std::invalid_argument("M must be >= 1");
  degree_ = {M, M};
  targets_.assign(M, 0);
  endpoints_.reserve(4 * M);
  for (std::uint64_t j = 0; j < M; ++j) {
    endpoints_.push_back(1);
    endpoints_.push_back(0);
  }
}

std::vector<Vertex> PaGenerator::draw_targets() {
  std::vector<Vertex> out(m_);
  for (auto& w : out) w = endpoints_[rng_.below(endpoints_.size())];
  return out;
}

void PaGenerator::add_vertex(std::span<const Vertex> targets) {
  if (targets.size() != m_) throw MalformedGraph("block must hold exactly M targets");
  const Vertex t = degree_.size();
  for (Vertex w : targets) {
    if (w >= t) throw MalformedGraph("target refers to a future vertex");
  }
  degree_.push_back(m_);
  for (Vertex w : targets) {
    ++degree_[w];
    endpoints_.push_back(t);
    endpoints_.push_back(w);
    targets_.push_back(w);
  }
}

Dag PaGenerator::snapshot() const { return Dag(time(), m_, targets_); }

PaGraph generate(const GenConfig& cfg) {
  if (cfg.M == 0) throw std::invalid_argument("M must be >= 1");
  if (cfg.n == 0) throw std::invalid_argument("n must be >= 1");
  PaGenerator gen(cfg.M, cfg.rng_seed);
  while (gen.time() < cfg.n) gen.step();
  PaGraph g{gen.snapshot(), std::nullopt};
  g.log_prob = log_prob(g.dag, g.dag.n() <= cfg.exact_cutoff, cfg.exact_cutoff);
  return g;
}

StepDistribution step_distribution(const Dag& g, std::uint64_t t) {
  if (t < 2 || t > g.n()) throw std::out_of_range("step index must lie in [2..n]");
  const std::uint64_t M = g.out_degree_param();
  auto degree = seed_degrees(g.n(), M);
  for (std::uint64_t s = 2; s < t; ++s) apply_block(degree, s, g.block(s));
  StepDistribution d;
  d.t = t;
  d.denominator = 2 * (t - 1) * M;
  d.degree.assign(degree.begin(), degree.begin() + static_cast<std::ptrdiff_t>(t));
  d.multiplicity.assign(t, 0);
  for (Vertex w : g.block(t)) ++d.multiplicity[w];
  return d;
}

LogProb log_prob(const Dag& g, bool exact, std::uint64_t exact_cutoff) {
  if (exact && g.n() > exact_cutoff) {
    throw std::invalid_argument("exact log-probability requested for n = " +
                                std::to_string(g.n()) + " above the cutoff " +
                                std::to_string(exact_cutoff));
  }
  const std::uint64_t M = g.out_degree_param();
  auto degree = seed_degrees(g.n(), M);
  long double bits = 0.0L;
  Rational p = 1;
  for (std::uint64_t t = 2; t <= g.n(); ++t) {
    auto block = g.block(t);
    bits += step_bits(degree, t, M, block);
    if (exact) p *= step_rational(degree, t, M, block);
    apply_block(degree, t, block);
  }
  LogProb out;
  out.bits = static_cast<double>(bits);
  if (exact) out.exact = p;
  return out;
}

double step_log_prob_bits(const Dag& g, std::uint64_t t) {
  auto d = step_distribution(g, t);
  return step_bits(d.degree, t, g.out_degree_param(), g.block(t));
}

Rational step_probability(const Dag& g, std::uint64_t t) {
  auto d = step_distribution(g, t);
  return step_rational(d.degree, t, g.out_degree_param(), g.block(t));
}

double lg(const Rational& x) {
  if (x <= 0) throw std::domain_error("lg of a non-positive rational");
  return lg_int(boost::multiprecision::numerator(x)) -
         lg_int(boost::multiprecision::denominator(x));
}

ProbabilityGap probability_gap(const Dag& g) {
  ProbabilityGap r;
  r.lhs_bits = log_prob(g, false).bits;
  r.h_deg_bits = degree_entropy(g);
  r.gap = r.lhs_bits - r.h_deg_bits;
  const double scale = static_cast<double>(g.n()) * static_cast<double>(g.out_degree_param()) *
                       std::log2(static_cast<double>(g.out_degree_param()) + 1.0);
  r.normalized_gap = r.gap / scale;
  r.simple_beyond_seed = g.simple_beyond_seed();
  return r;
}

}  // namespace upag
