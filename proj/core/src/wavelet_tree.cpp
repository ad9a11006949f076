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

#include "upag/wavelet_tree.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <optional>
#include <stdexcept>
#include <string>

#include "upag/entropy.hpp"

namespace upag {

unsigned WaveletTree::depth_for(std::uint64_t sigma) {
  return sigma <= 1 ? 0 : static_cast<unsigned>(std::bit_width(sigma - 1));
}

WaveletTree::WaveletTree(std::span<const std::uint64_t> seq, std::uint64_t sigma,
                         BitEncoding encoding, DirectoryParams params)
    : sigma_(sigma), length_(seq.size()) {
  for (auto s : seq) {
    if (s >= sigma) {
      throw std::invalid_argument("symbol " + std::to_string(s) + " outside alphabet of size " +
                                  std::to_string(sigma));
    }
  }
  const unsigned depth = depth_for(sigma);
  std::vector<std::uint64_t> cur(seq.begin(), seq.end());
  levels_.reserve(depth);
  for (unsigned l = 0; l < depth; ++l) {
    const unsigned shift = depth - 1 - l;
    BitArray bits(length_);
    for (std::uint64_t j = 0; j < length_; ++j) bits.set(j, (cur[j] >> shift) & 1U);
    levels_.emplace_back(bits, encoding, params);
    // Children of each node, zeros first, original order kept.
    auto run = cur.begin();
    while (run != cur.end()) {
      const std::uint64_t prefix = *run >> (shift + 1);
      auto run_end = std::find_if(run, cur.end(),
                                  [&](std::uint64_t x) { return (x >> (shift + 1)) != prefix; });
      std::stable_partition(run, run_end,
                            [shift](std::uint64_t x) { return ((x >> shift) & 1U) == 0; });
      run = run_end;
    }
  }
  h0_bits_ = h0(seq).h0_bits;
}

WaveletTree WaveletTree::from_levels(std::uint64_t sigma, std::uint64_t length,
                                     std::vector<BitVector> levels) {
  if (levels.size() != depth_for(sigma)) {
    throw std::invalid_argument("level count does not match alphabet size");
  }
  for (const auto& lv : levels) {
    if (lv.size() != length) throw std::invalid_argument("level length mismatch");
  }
  WaveletTree wt;
  wt.sigma_ = sigma;
  wt.length_ = length;
  wt.levels_ = std::move(levels);
  const NodeStats stats = wt.node_stats();
  if (stats.distinct_symbols > 0 && stats.max_symbol >= sigma) {
    throw std::invalid_argument("levels encode a symbol outside the alphabet");
  }
  wt.h0_bits_ = stats.h0_bits;
  return wt;
}

void WaveletTree::check_symbol(std::uint64_t c) const {
  if (c >= sigma_) {
    throw std::out_of_range("symbol " + std::to_string(c) + " outside alphabet of size " +
                            std::to_string(sigma_));
  }
}

std::uint64_t WaveletTree::access(std::uint64_t i) const {
  if (i == 0 || i > length_) {
    throw std::out_of_range("access(" + std::to_string(i) + ") outside [1.." +
                            std::to_string(length_) + "]");
  }
  std::uint64_t s = 0;
  std::uint64_t e = length_;
  std::uint64_t pos = i - 1;
  std::uint64_t sym = 0;
  for (const auto& bv : levels_) {
    // Ones before the node, before and after the position, and before the
    // node end, in one pass.
    const std::array<std::uint64_t, 4> at{s, s + pos, s + pos + 1, e};
    std::array<std::uint64_t, 4> ones{};
    bv.ones_before_sorted(at, ones);
    const std::uint64_t zeros = (e - s) - (ones[3] - ones[0]);
    if (ones[2] != ones[1]) {
      pos = ones[1] - ones[0];
      s += zeros;
      sym = (sym << 1) | 1U;
    } else {
      pos -= ones[1] - ones[0];
      e = s + zeros;
      sym <<= 1;
    }
  }
  return sym;
}

std::uint64_t WaveletTree::rank(std::uint64_t c, std::uint64_t i) const {
  check_symbol(c);
  if (i > length_) {
    throw std::out_of_range("rank at " + std::to_string(i) + " beyond length " +
                            std::to_string(length_));
  }
  const unsigned depth = this->depth();
  std::uint64_t s = 0;
  std::uint64_t e = length_;
  std::uint64_t pos = i;
  for (unsigned l = 0; l < depth && pos > 0; ++l) {
    const std::array<std::uint64_t, 3> at{s, s + pos, e};
    std::array<std::uint64_t, 3> ones{};
    levels_[l].ones_before_sorted(at, ones);
    const std::uint64_t ones_p = ones[1] - ones[0];
    const std::uint64_t zeros = (e - s) - (ones[2] - ones[0]);
    if ((c >> (depth - 1 - l)) & 1U) {
      pos = ones_p;
      s += zeros;
    } else {
      pos -= ones_p;
      e = s + zeros;
    }
  }
  return pos;
}

std::uint64_t WaveletTree::count_range(std::uint64_t c, std::uint64_t from,
                                       std::uint64_t to) const {
  check_symbol(c);
  if (from > to || to > length_) {
    throw std::out_of_range("range (" + std::to_string(from) + ", " + std::to_string(to) +
                            "] outside [0.." + std::to_string(length_) + "]");
  }
  const unsigned depth = this->depth();
  std::uint64_t s = 0;
  std::uint64_t e = length_;
  std::uint64_t a = from;  // node-relative bounds of the range
  std::uint64_t b = to;
  for (unsigned l = 0; l < depth && a < b; ++l) {
    const std::array<std::uint64_t, 4> at{s, s + a, s + b, e};
    std::array<std::uint64_t, 4> ones{};
    levels_[l].ones_before_sorted(at, ones);
    const std::uint64_t zeros = (e - s) - (ones[3] - ones[0]);
    if ((c >> (depth - 1 - l)) & 1U) {
      a = ones[1] - ones[0];
      b = ones[2] - ones[0];
      s += zeros;
    } else {
      a -= ones[1] - ones[0];
      b -= ones[2] - ones[0];
      e = s + zeros;
    }
  }
  return b - a;
}

std::optional<std::uint64_t> WaveletTree::try_select(std::uint64_t c, std::uint64_t k) const {
  check_symbol(c);
  const unsigned depth = this->depth();
  // Node start and the ones before it, per level, for the upward pass.
  std::vector<std::array<std::uint64_t, 2>> path(depth);
  std::uint64_t s = 0;
  std::uint64_t e = length_;
  for (unsigned l = 0; l < depth; ++l) {
    const std::array<std::uint64_t, 2> at{s, e};
    std::array<std::uint64_t, 2> ones{};
    levels_[l].ones_before_sorted(at, ones);
    path[l] = {s, ones[0]};
    const std::uint64_t zeros = (e - s) - (ones[1] - ones[0]);
    if ((c >> (depth - 1 - l)) & 1U) {
      s += zeros;
    } else {
      e = s + zeros;
    }
  }
  if (k == 0 || k > e - s) return std::nullopt;
  std::uint64_t p = k;
  for (unsigned l = depth; l-- > 0;) {
    const auto [start, ones_before_start] = path[l];
    const bool bit = (c >> (depth - 1 - l)) & 1U;
    const std::uint64_t before = bit ? ones_before_start : start - ones_before_start;
    p = levels_[l].select(bit, before + p) - start;
  }
  return p;
}

std::uint64_t WaveletTree::select(std::uint64_t c, std::uint64_t k) const {
  if (auto p = try_select(c, k)) return *p;
  throw std::out_of_range("select(" + std::to_string(c) + ", " + std::to_string(k) +
                          ") exceeds frequency " + std::to_string(rank(c, length_)));
}

WaveletTree::NodeStats WaveletTree::node_stats() const {
  NodeStats st;
  std::vector<std::uint64_t> leaf_sizes;
  struct Frame {
    unsigned level;
    std::uint64_t s;
    std::uint64_t e;
    std::uint64_t prefix;
  };
  std::vector<Frame> stack{{0, 0, length_, 0}};
  while (!stack.empty()) {
    const Frame f = stack.back();
    stack.pop_back();
    if (f.s == f.e) continue;
    if (f.level == depth()) {
      leaf_sizes.push_back(f.e - f.s);
      st.max_symbol = std::max(st.max_symbol, f.prefix);
      continue;
    }
    const auto& bv = levels_[f.level];
    const std::uint64_t ones = bv.ones_before(f.e) - bv.ones_before(f.s);
    const std::uint64_t zeros = (f.e - f.s) - ones;
    ++st.internal_nodes;
    st.sum_lg_binomial += lg_binomial(f.e - f.s, ones);
    stack.push_back({f.level + 1, f.s + zeros, f.e, (f.prefix << 1) | 1U});
    stack.push_back({f.level + 1, f.s, f.s + zeros, f.prefix << 1});
  }
  st.distinct_symbols = leaf_sizes.size();
  st.h0_bits = h0_bits_from_counts(leaf_sizes);
  return st;
}

SpaceBits WaveletTree::space() const {
  SpaceBits s;
  for (const auto& bv : levels_) {
    const SpaceBits b = bv.space();
    s.payload_bits += b.payload_bits;
    s.directory_bits += b.directory_bits;
  }
  s.entropy_bound_bits = h0_bits_;
  return s;
}

std::vector<std::uint64_t> WaveletTree::decode() const {
  std::vector<std::uint64_t> out(length_);
  for (std::uint64_t i = 0; i < length_; ++i) out[i] = access(i + 1);
  return out;
}

}  // namespace upag
