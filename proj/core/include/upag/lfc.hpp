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
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "upag/construct.hpp"

namespace upag {

// Deletion marker in traces.
inline constexpr std::uint64_t kLambda = std::numeric_limits<std::uint64_t>::max();

struct LfcStep {
  std::uint64_t symbol = 0;       // leftmost surviving symbol of S
  std::uint64_t block = 0;        // flagged block, 1-based
  std::vector<std::uint64_t> a_hat;
  std::vector<std::uint64_t> s;
  std::vector<bool> flags;
};

struct LfcResult {
  std::vector<std::uint64_t> sorted;   // S before the first step
  std::vector<std::uint64_t> output;   // A-hat with every marker dropped
  std::vector<std::uint64_t> deleted;  // deleted symbol per block, block order
  std::vector<LfcStep> steps;          // filled only when tracing
};

// Least-frequent-character reduction of `a` in blocks of M. `sigma.rank` is
// indexed by symbol and fixes the order of S. Throws std::invalid_argument
// for an empty input or |a| not divisible by M.
LfcResult lfc_sequence(std::span<const std::uint64_t> a, std::uint64_t M, const SigmaRank& sigma,
                       bool trace = false);

// Same, ranking symbols by frequency with ties broken by symbol value.
LfcResult lfc_sequence(std::span<const std::uint64_t> a, std::uint64_t M, bool trace = false);

// Byte-string convenience form of the above.
std::string lfc_string(std::string_view a, std::uint64_t M);
LfcResult lfc_trace(std::string_view a, std::uint64_t M);

// Renders a traced sequence, markers shown as '.'.
std::string render(std::span<const std::uint64_t> seq);

}  // namespace upag
