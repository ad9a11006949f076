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

#include "upag/entropy.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "upag/pa_gen.hpp"

namespace upag {

namespace {

EntropyReport report_from(std::map<std::uint64_t, std::uint64_t> freq, std::uint64_t length) {
  EntropyReport r;
  r.length = length;
  r.alphabet_size = freq.size();
  std::vector<std::uint64_t> counts;
  counts.reserve(freq.size());
  for (const auto& [sym, c] : freq) counts.push_back(c);
  r.h0_bits = h0_bits_from_counts(counts);
  r.h0_pc_bits = length == 0 ? 0.0 : r.h0_bits / static_cast<double>(length);
  r.frequency = std::move(freq);
  return r;
}

}  // namespace

double h0_bits_from_counts(std::span<const std::uint64_t> counts) {
  const std::uint64_t n = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
  if (n == 0) return 0.0;
  const double dn = static_cast<double>(n);
  double bits = 0.0;
  for (std::uint64_t c : counts) {
    if (c == 0) continue;
    bits += static_cast<double>(c) * std::log2(dn / static_cast<double>(c));
  }
  return bits;
}

long double h0_bits_precise(std::span<const std::uint64_t> counts) {
  const std::uint64_t n = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
  if (n == 0) return 0.0L;
  const long double ln = static_cast<long double>(n);
  long double sum_clgc = 0.0L;
  for (std::uint64_t c : counts) {
    if (c <= 1) continue;
    const long double lc = static_cast<long double>(c);
    sum_clgc += lc * std::log2(lc);
  }
  return ln * std::log2(ln) - sum_clgc;
}

EntropyReport h0(std::span<const std::uint64_t> seq) {
  std::map<std::uint64_t, std::uint64_t> freq;
  for (auto s : seq) ++freq[s];
  return report_from(std::move(freq), seq.size());
}

EntropyReport h0(std::string_view text) {
  std::map<std::uint64_t, std::uint64_t> freq;
  for (unsigned char ch : text) ++freq[ch];
  return report_from(std::move(freq), text.size());
}

double degree_entropy(const Dag& g) {
  // Every vertex appears in A(G) once per incoming edge.
  return h0_bits_from_counts(g.in_degrees());
}

double lg_factorial(std::uint64_t n) {
  return std::lgamma(static_cast<double>(n) + 1.0) / std::numbers::ln2;
}

double lg_binomial(std::uint64_t n, std::uint64_t k) {
  if (k == 0 || k >= n) return 0.0;
  return lg_factorial(n) - lg_factorial(k) - lg_factorial(n - k);
}

BoundsReport bounds_report(const Dag& g) {
  const double n = static_cast<double>(g.n());
  const double M = static_cast<double>(g.out_degree_param());
  BoundsReport r;
  r.h_deg = degree_entropy(g);
  r.lg_inv_p = log_prob(g, false).bits;
  r.lg_factorial_n = lg_factorial(g.n());
  r.unlabelled_lb = r.lg_inv_p - r.lg_factorial_n;
  r.unlabelled_budget = r.h_deg * (1.0 - 1.0 / M) + 2.0 * n;
  r.worstcase_budget = (M - 1.0) * n * std::log2(n) + 2.0 * n;
  return r;
}

}  // namespace upag
