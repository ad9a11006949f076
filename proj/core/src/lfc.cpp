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

#include "upag/lfc.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace upag {

LfcResult lfc_sequence(std::span<const std::uint64_t> a, std::uint64_t M, const SigmaRank& sigma,
                       bool trace) {
  if (M == 0) throw std::invalid_argument("block size must be positive");
  if (a.empty()) throw std::invalid_argument("input must be nonempty");
  if (a.size() % M != 0) {
    throw std::invalid_argument("length " + std::to_string(a.size()) +
                                " is not a multiple of the block size " + std::to_string(M));
  }
  const std::uint64_t blocks = a.size() / M;
  const std::uint64_t alphabet = sigma.rank.size();
  for (auto c : a) {
    if (c >= alphabet) throw std::invalid_argument("symbol outside the ranked alphabet");
  }

  LfcResult r;
  std::vector<std::uint64_t> a_hat(a.begin(), a.end());
  std::vector<std::uint64_t> s(a.begin(), a.end());
  std::stable_sort(s.begin(), s.end(), [&](std::uint64_t x, std::uint64_t y) {
    return sigma.rank[x] < sigma.rank[y];
  });
  r.sorted = s;

  // S is grouped by symbol, so each symbol's copies form one run; erasing
  // "the leftmost copy of l" just advances that run's cursor.
  std::vector<std::uint64_t> cursor(alphabet, 0);
  for (std::uint64_t i = s.size(); i-- > 0;) cursor[s[i]] = i;
  // Blocks containing each symbol, ascending, with a cursor past flagged ones.
  std::vector<std::vector<std::uint64_t>> holders(alphabet);
  for (std::uint64_t j = 0; j < blocks; ++j) {
    for (std::uint64_t k = 0; k < M; ++k) {
      auto& h = holders[a[j * M + k]];
      if (h.empty() || h.back() != j) h.push_back(j);
    }
  }
  std::vector<std::uint64_t> holder_pos(alphabet, 0);
  std::vector<bool> flag(blocks, false);
  r.deleted.assign(blocks, 0);

  std::uint64_t leftmost = 0;
  for (std::uint64_t step = 0; step < blocks; ++step) {
    while (leftmost < s.size() && s[leftmost] == kLambda) ++leftmost;
    const std::uint64_t c = s[leftmost];
    auto& hp = holder_pos[c];
    while (hp < holders[c].size() && flag[holders[c][hp]]) ++hp;
    if (hp == holders[c].size()) throw std::logic_error("no unflagged block holds the symbol");
    const std::uint64_t j = holders[c][hp];
    flag[j] = true;
    for (std::uint64_t k = 0; k < M; ++k) {
      const std::uint64_t l = a_hat[j * M + k];
      s[cursor[l]++] = kLambda;
    }
    for (std::uint64_t k = 0; k < M; ++k) {
      if (a_hat[j * M + k] == c) {
        a_hat[j * M + k] = kLambda;
        break;
      }
    }
    r.deleted[j] = c;
    if (trace) r.steps.push_back({c, j + 1, a_hat, s, flag});
  }

  r.output.reserve(a.size() - blocks);
  for (auto x : a_hat) {
    if (x != kLambda) r.output.push_back(x);
  }
  return r;
}

LfcResult lfc_sequence(std::span<const std::uint64_t> a, std::uint64_t M, bool trace) {
  const std::uint64_t alphabet = a.empty() ? 0 : *std::max_element(a.begin(), a.end()) + 1;
  return lfc_sequence(a, M, sigma_rank_of_sequence(a, alphabet), trace);
}

namespace {

std::vector<std::uint64_t> bytes_of(std::string_view a) {
  std::vector<std::uint64_t> v;
  v.reserve(a.size());
  for (unsigned char ch : a) v.push_back(ch);
  return v;
}

}  // namespace

LfcResult lfc_trace(std::string_view a, std::uint64_t M) {
  const auto seq = bytes_of(a);
  return lfc_sequence(seq, M, sigma_rank_of_sequence(seq, 256), true);
}

std::string lfc_string(std::string_view a, std::uint64_t M) {
  const auto seq = bytes_of(a);
  const auto r = lfc_sequence(seq, M, sigma_rank_of_sequence(seq, 256));
  std::string out;
  out.reserve(r.output.size());
  for (auto c : r.output) out.push_back(static_cast<char>(c));
  return out;
}

std::string render(std::span<const std::uint64_t> seq) {
  std::string out;
  for (auto c : seq) out.push_back(c == kLambda ? '.' : static_cast<char>(c));
  return out;
}

}  // namespace upag
