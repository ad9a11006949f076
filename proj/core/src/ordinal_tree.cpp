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

#include "upag/ordinal_tree.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <limits>
#include <stdexcept>
#include <string>

namespace upag {

namespace {

// Per byte (bits read LSB first): net excess change, and the minimum running
// excess after each of its 8 bits.
struct ExcessTables {
  std::array<std::int8_t, 256> total{};
  std::array<std::int8_t, 256> min_prefix{};

  constexpr ExcessTables() {
    for (int x = 0; x < 256; ++x) {
      int e = 0;
      int lo = 8;
      for (int b = 0; b < 8; ++b) {
        e += ((x >> b) & 1) ? 1 : -1;
        lo = std::min(lo, e);
      }
      total[x] = static_cast<std::int8_t>(e);
      min_prefix[x] = static_cast<std::int8_t>(lo);
    }
  }
};

constexpr ExcessTables kExcess{};

constexpr std::uint64_t kMaxNodes = std::uint64_t{1} << 30;

}  // namespace

OrdinalTree OrdinalTree::from_parents(std::span<const std::uint64_t> parent) {
  const std::uint64_t n = parent.size();
  if (n == 0) throw std::invalid_argument("a tree needs at least one node");
  std::vector<std::uint64_t> degree(n, 0);
  std::vector<std::uint64_t> path{0};
  for (std::uint64_t v = 1; v < n; ++v) {
    const std::uint64_t p = parent[v];
    while (!path.empty() && path.back() != p) path.pop_back();
    if (path.empty()) {
      throw std::invalid_argument("parent array is not in preorder at node " + std::to_string(v));
    }
    ++degree[p];
    path.push_back(v);
  }
  BitArray bits;
  bits.push_back(true);
  for (std::uint64_t v = 0; v < n; ++v) {
    for (std::uint64_t d = 0; d < degree[v]; ++d) bits.push_back(true);
    bits.push_back(false);
  }
  return from_parentheses(std::move(bits));
}

OrdinalTree OrdinalTree::from_parentheses(BitArray bits) {
  const std::uint64_t len = bits.size();
  if (len < 2 || len % 2 != 0) {
    throw std::invalid_argument("parenthesis sequence must have positive even length");
  }
  if (len / 2 > kMaxNodes) throw std::invalid_argument("tree too large");
  std::int64_t e = 0;
  for (std::uint64_t p = 0; p < len; ++p) {
    e += bits[p] ? 1 : -1;
    if (e < 0 || (e == 0 && p + 1 != len)) {
      throw std::invalid_argument("parenthesis sequence unbalanced at position " +
                                  std::to_string(p));
    }
  }
  if (e != 0) throw std::invalid_argument("parenthesis sequence does not close");
  OrdinalTree t;
  t.raw_ = std::move(bits);
  t.bits_ = BitVector(t.raw_, BitEncoding::kPlain);
  t.build_excess_index();
  return t;
}

void OrdinalTree::build_excess_index() {
  const std::uint64_t len = raw_.size();
  const std::uint64_t blocks = (len + kExcessBlockBits - 1) / kExcessBlockBits;
  leaves_ = std::bit_ceil(std::max<std::uint64_t>(blocks, 1));
  min_excess_.assign(2 * leaves_, std::numeric_limits<std::int32_t>::max());
  std::int32_t e = 0;
  for (std::uint64_t p = 0; p < len; ++p) {
    e += raw_[p] ? 1 : -1;
    auto& slot = min_excess_[leaves_ + p / kExcessBlockBits];
    slot = std::min(slot, e);
  }
  for (std::uint64_t k = leaves_ - 1; k >= 1; --k) {
    min_excess_[k] = std::min(min_excess_[2 * k], min_excess_[2 * k + 1]);
  }
}

std::int64_t OrdinalTree::excess(std::int64_t p) const {
  if (p < 0) return 0;
  const auto q = static_cast<std::uint64_t>(p) + 1;
  return 2 * static_cast<std::int64_t>(bits_.ones_before(q)) - static_cast<std::int64_t>(q);
}

std::uint64_t OrdinalTree::scan_forward(std::uint64_t from, std::uint64_t to, std::int64_t before,
                                        std::int64_t target) const {
  std::int64_t e = before;
  std::uint64_t p = from;
  auto step_bits = [&](std::uint64_t stop) -> bool {
    for (; p < stop; ++p) {
      e += raw_[p] ? 1 : -1;
      if (e <= target) return true;
    }
    return false;
  };
  if (step_bits(std::min(to, (from + 7) / 8 * 8))) return p;
  while (p + 8 <= to) {
    const auto x = static_cast<std::size_t>(raw_.read(p, 8));
    if (e + kExcess.min_prefix[x] <= target) {
      step_bits(p + 8);
      return p;
    }
    e += kExcess.total[x];
    p += 8;
  }
  if (step_bits(to)) return p;
  return to;
}

std::int64_t OrdinalTree::scan_backward(std::uint64_t from, std::uint64_t to,
                                        std::int64_t target) const {
  if (from >= to) return -1;
  std::int64_t e = excess(static_cast<std::int64_t>(to) - 1);
  std::uint64_t p = to;  // positions [from, p) remain; e is the excess at p-1
  while (p > from) {
    if (p % 8 == 0 && p - 8 >= from) {
      const auto x = static_cast<std::size_t>(raw_.read(p - 8, 8));
      const std::int64_t e_before = e - kExcess.total[x];
      if (e_before + kExcess.min_prefix[x] > target) {
        e = e_before;
        p -= 8;
        continue;
      }
    }
    if (e <= target) return static_cast<std::int64_t>(p) - 1;
    e -= raw_[p - 1] ? 1 : -1;
    --p;
  }
  return -1;
}

std::int64_t OrdinalTree::first_block_at_or_after(std::uint64_t block, std::int64_t target) const {
  if (block >= leaves_) return -1;
  std::uint64_t k = leaves_ + block;
  if (min_excess_[k] <= target) return static_cast<std::int64_t>(block);
  while (k > 1) {
    if (k % 2 == 0 && min_excess_[k + 1] <= target) {
      k = k + 1;
      while (k < leaves_) k = min_excess_[2 * k] <= target ? 2 * k : 2 * k + 1;
      return static_cast<std::int64_t>(k - leaves_);
    }
    k /= 2;
  }
  return -1;
}

std::int64_t OrdinalTree::last_block_at_or_before(std::int64_t block, std::int64_t target) const {
  if (block < 0) return -1;
  std::uint64_t k = leaves_ + static_cast<std::uint64_t>(block);
  if (min_excess_[k] <= target) return block;
  while (k > 1) {
    if (k % 2 == 1 && min_excess_[k - 1] <= target) {
      k = k - 1;
      while (k < leaves_) k = min_excess_[2 * k + 1] <= target ? 2 * k + 1 : 2 * k;
      return static_cast<std::int64_t>(k - leaves_);
    }
    k /= 2;
  }
  return -1;
}

std::uint64_t OrdinalTree::find_close(std::uint64_t open) const {
  const std::int64_t target = excess(static_cast<std::int64_t>(open)) - 1;
  const std::uint64_t len = raw_.size();
  const std::uint64_t block = open / kExcessBlockBits;
  const std::uint64_t block_end = std::min(len, (block + 1) * kExcessBlockBits);
  const std::uint64_t hit =
      scan_forward(open + 1, block_end, excess(static_cast<std::int64_t>(open)), target);
  if (hit < block_end) return hit;
  const std::int64_t next = first_block_at_or_after(block + 1, target);
  if (next < 0) throw std::logic_error("unmatched open parenthesis");
  const std::uint64_t start = static_cast<std::uint64_t>(next) * kExcessBlockBits;
  return scan_forward(start, std::min(len, start + kExcessBlockBits),
                      excess(static_cast<std::int64_t>(start) - 1), target);
}

std::uint64_t OrdinalTree::find_open(std::uint64_t close) const {
  const std::int64_t target = excess(static_cast<std::int64_t>(close));
  const std::uint64_t block = close / kExcessBlockBits;
  std::int64_t k = scan_backward(block * kExcessBlockBits, close, target);
  if (k < 0) {
    const std::int64_t prev = last_block_at_or_before(static_cast<std::int64_t>(block) - 1, target);
    if (prev >= 0) {
      const std::uint64_t start = static_cast<std::uint64_t>(prev) * kExcessBlockBits;
      k = scan_backward(start, start + kExcessBlockBits, target);
    }
  }
  // k == -1 stands for the virtual position before the sequence (excess 0).
  return static_cast<std::uint64_t>(k + 1);
}

void OrdinalTree::check_node(std::uint64_t v) const {
  if (v >= node_count()) {
    throw std::out_of_range("node " + std::to_string(v) + " outside tree of " +
                            std::to_string(node_count()) + " nodes");
  }
}

std::uint64_t OrdinalTree::degree(std::uint64_t v) const {
  check_node(v);
  const std::uint64_t start = v == 0 ? 1 : bits_.select0(v);
  const std::uint64_t end = bits_.select0(v + 1) - 1;
  return end - start;
}

std::uint64_t OrdinalTree::child(std::uint64_t v, std::uint64_t i) const {
  check_node(v);
  const std::uint64_t start = v == 0 ? 1 : bits_.select0(v);
  const std::uint64_t end = bits_.select0(v + 1) - 1;
  if (i == 0 || i > end - start) {
    throw std::out_of_range("child index " + std::to_string(i) + " of node " + std::to_string(v) +
                            " with degree " + std::to_string(end - start));
  }
  const std::uint64_t close = find_close(end - i);
  return bits_.rank0(close + 1);
}

std::uint64_t OrdinalTree::parent(std::uint64_t v) const {
  check_node(v);
  if (v == 0) throw std::out_of_range("the root has no parent");
  const std::uint64_t start = bits_.select0(v);
  const std::uint64_t open = find_open(start - 1);
  return bits_.rank0(open);
}

SpaceBits OrdinalTree::space() const {
  SpaceBits s;
  s.payload_bits = raw_.size();
  s.directory_bits = bits_.space().directory_bits + min_excess_.size() * 32;
  s.entropy_bound_bits = static_cast<double>(raw_.size());
  return s;
}

}  // namespace upag
