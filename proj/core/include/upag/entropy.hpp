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
#include <map>
#include <span>
#include <string_view>
#include <vector>

#include "upag/graph_model.hpp"

namespace upag {

// Zeroth-order empirical entropy of a sequence, in bits.
struct EntropyReport {
  std::uint64_t length = 0;
  std::uint64_t alphabet_size = 0;  // distinct symbols present
  std::map<std::uint64_t, std::uint64_t> frequency;
  double h0_bits = 0.0;     // sum_c |T|_c lg(|T|/|T|_c)
  double h0_pc_bits = 0.0;  // h0_bits / |T|, 0 for the empty sequence
};

EntropyReport h0(std::span<const std::uint64_t> seq);
EntropyReport h0(std::string_view text);

// H0 from a frequency vector alone. Zero counts contribute nothing.
double h0_bits_from_counts(std::span<const std::uint64_t> counts);

// Same quantity accumulated in extended precision and expanded as
// n lg n - sum c lg c; used for golden comparisons at the 1e-9 level.
long double h0_bits_precise(std::span<const std::uint64_t> counts);

// H_deg(G) = H0(A(G)).
double degree_entropy(const Dag& g);
inline double degree_entropy(const PaGraph& g) { return degree_entropy(g.dag); }

// lg(n!) via lgamma.
double lg_factorial(std::uint64_t n);

// lg binom(n, k); 0 when k is 0 or n.
double lg_binomial(std::uint64_t n, std::uint64_t k);

struct BoundsReport {
  double h_deg = 0.0;
  double lg_inv_p = 0.0;
  double lg_factorial_n = 0.0;
  double unlabelled_lb = 0.0;      // lg_inv_p - lg(n!)
  double unlabelled_budget = 0.0;  // h_deg (1 - 1/M) + 2n
  double worstcase_budget = 0.0;   // (M-1) n lg n + 2n
};

BoundsReport bounds_report(const Dag& g);
inline BoundsReport bounds_report(const PaGraph& g) { return bounds_report(g.dag); }

}  // namespace upag
