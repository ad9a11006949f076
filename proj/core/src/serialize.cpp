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

// Binary layout (all integers little-endian, bit arrays LSB-first in 64-bit
// words):
//
//   "UPAG" | u16 version | u16 flags | u64 M | u64 n
//   u64 tree bits | tree words
//   u64 sigma | u64 length
//   per level:  plain: u64 bits | words
//               rrr:   u64 bits | class words | u64 offset bits | offset words
//   u32 CRC-32 of everything before it
//
// flags: bit 0 labelled mode, bit 1 plain (uncompressed) levels, bits 2-3
// the parent tie-break (0 index, 1 first occurrence, 2 custom).

#include <array>
#include <bit>
#include <cstring>
#include <string>

#include <boost/crc.hpp>

#include "upag/compressed_graph.hpp"
#include "upag/errors.hpp"

namespace upag {

namespace {

constexpr std::array<char, 4> kMagic{'U', 'P', 'A', 'G'};
constexpr std::uint16_t kFlagLabelled = 1;
constexpr std::uint16_t kFlagPlain = 2;
constexpr unsigned kTieShift = 2;
constexpr std::uint16_t kTieMask = 3 << kTieShift;

// Written so that lengths near 2^64 cannot wrap.
std::uint64_t words_for(std::uint64_t bits) { return bits / 64 + (bits % 64 != 0 ? 1 : 0); }

class Writer {
 public:
  void raw(const void* p, std::size_t n) {
    const auto* b = static_cast<const std::byte*>(p);
    out_.insert(out_.end(), b, b + n);
  }
  template <class T>
  void uint(T v) {
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      out_.push_back(static_cast<std::byte>((static_cast<std::uint64_t>(v) >> (8 * i)) & 0xff));
    }
  }
  void bits(const BitArray& a) {
    for (auto w : a.words()) uint(w);
  }
  std::vector<std::byte>& bytes() { return out_; }

 private:
  std::vector<std::byte> out_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::byte> in) : in_(in) {}

  void need(std::uint64_t n, const char* what) const {
    if (n > in_.size() - pos_) {
      throw FormatError(FormatError::Kind::kTruncated,
                        std::string("stream truncated while reading ") + what);
    }
  }
  template <class T>
  T uint(const char* what) {
    need(sizeof(T), what);
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      v |= static_cast<std::uint64_t>(in_[pos_ + i]) << (8 * i);
    }
    pos_ += sizeof(T);
    return static_cast<T>(v);
  }
  BitArray bits(std::uint64_t size, const char* what) {
    const std::uint64_t words = words_for(size);
    if (words > (in_.size() - pos_) / 8) {
      throw FormatError(FormatError::Kind::kTruncated,
                        std::string("stream truncated while reading ") + what);
    }
    std::vector<std::uint64_t> w(words);
    for (auto& x : w) x = uint<std::uint64_t>(what);
    try {
      return BitArray::from_words(std::move(w), size);
    } catch (const std::exception& e) {
      throw FormatError(FormatError::Kind::kInvalid, std::string(what) + ": " + e.what());
    }
  }
  std::size_t pos() const noexcept { return pos_; }
  std::size_t remaining() const noexcept { return in_.size() - pos_; }

 private:
  std::span<const std::byte> in_;
  std::size_t pos_ = 0;
};

std::uint32_t crc32(std::span<const std::byte> data) {
  boost::crc_32_type crc;
  crc.process_bytes(data.data(), data.size());
  return crc.checksum();
}

struct RawLevel {
  std::uint64_t size = 0;
  BitArray plain;
  BitArray classes;
  BitArray offsets;
};

}  // namespace

std::vector<std::byte> CompressedGraph::serialize() const {
  Writer w;
  w.raw(kMagic.data(), kMagic.size());
  w.uint(kFormatVersion);
  const bool plain = wt_.depth() > 0 && wt_.level(0).encoding() == BitEncoding::kPlain;
  std::uint16_t flags = 0;
  if (mode_ == GraphMode::kLabelled) flags |= kFlagLabelled;
  if (plain) flags |= kFlagPlain;
  flags |= static_cast<std::uint16_t>(static_cast<unsigned>(tie_break_) << kTieShift);
  w.uint(flags);
  w.uint(m_);
  w.uint(n_);
  if (mode_ == GraphMode::kUnlabelled) {
    w.uint(tree_.parentheses().size());
    w.bits(tree_.parentheses());
  } else {
    w.uint(std::uint64_t{0});
  }
  w.uint(wt_.sigma());
  w.uint(wt_.size());
  for (unsigned l = 0; l < wt_.depth(); ++l) {
    const BitVector& bv = wt_.level(l);
    w.uint(bv.size());
    if (plain) {
      w.bits(bv.plain_bits());
    } else {
      w.bits(bv.rrr_classes());
      w.uint(bv.rrr_offsets().size());
      w.bits(bv.rrr_offsets());
    }
  }
  const std::uint32_t crc = crc32(w.bytes());
  w.uint(crc);
  return std::move(w.bytes());
}

CompressedGraph CompressedGraph::deserialize(std::span<const std::byte> bytes) {
  Reader r(bytes);
  r.need(kMagic.size(), "magic");
  if (std::memcmp(bytes.data(), kMagic.data(), kMagic.size()) != 0) {
    throw FormatError(FormatError::Kind::kBadMagic, "not a upag file (bad magic)");
  }
  r.uint<std::uint32_t>("magic");
  const auto version = r.uint<std::uint16_t>("version");
  if (version != kFormatVersion) {
    throw FormatError(FormatError::Kind::kVersionMismatch,
                      "format version " + std::to_string(version) + ", expected " +
                          std::to_string(kFormatVersion));
  }
  const auto flags = r.uint<std::uint16_t>("flags");
  if ((flags & ~(kFlagLabelled | kFlagPlain | kTieMask)) != 0 ||
      ((flags & kTieMask) >> kTieShift) > static_cast<unsigned>(TieBreak::kCustom)) {
    throw FormatError(FormatError::Kind::kInvalid, "unknown flag bits");
  }
  const bool labelled = (flags & kFlagLabelled) != 0;
  const bool plain = (flags & kFlagPlain) != 0;
  const auto M = r.uint<std::uint64_t>("M");
  const auto n = r.uint<std::uint64_t>("n");
  const auto tree_bits = r.uint<std::uint64_t>("tree length");
  BitArray parens = r.bits(tree_bits, "tree");
  const auto sigma = r.uint<std::uint64_t>("alphabet size");
  const auto length = r.uint<std::uint64_t>("sequence length");
  if (sigma == 0 || sigma > (std::uint64_t{1} << 40)) {
    throw FormatError(FormatError::Kind::kInvalid, "implausible alphabet size");
  }
  const auto depth = static_cast<unsigned>(std::bit_width(sigma - 1));
  std::vector<RawLevel> raw(depth);
  for (auto& lv : raw) {
    lv.size = r.uint<std::uint64_t>("level length");
    if (plain) {
      lv.plain = r.bits(lv.size, "level bits");
    } else {
      const std::uint64_t blocks = lv.size / kRrrBlockBits + (lv.size % kRrrBlockBits != 0 ? 1 : 0);
      if (blocks > r.remaining()) {
        throw FormatError(FormatError::Kind::kTruncated, "stream truncated in level classes");
      }
      lv.classes = r.bits(blocks * kRrrClassWidth, "level classes");
      const auto offset_bits = r.uint<std::uint64_t>("offset length");
      lv.offsets = r.bits(offset_bits, "level offsets");
    }
  }
  const std::size_t body = r.pos();
  const auto stored = r.uint<std::uint32_t>("checksum");
  if (r.remaining() != 0) throw FormatError(FormatError::Kind::kInvalid, "trailing bytes");
  if (crc32(bytes.first(body)) != stored) {
    throw FormatError(FormatError::Kind::kChecksum, "checksum mismatch");
  }

  if (M == 0 || n == 0) throw FormatError(FormatError::Kind::kInvalid, "M and n must be positive");
  const std::uint64_t stride = labelled ? M : M - 1;
  if (sigma != n + 1 || (stride != 0 && n > length / stride) || length != n * stride) {
    throw FormatError(FormatError::Kind::kInvalid, "sequence shape does not match M and n");
  }
  if (labelled ? tree_bits != 0 : tree_bits != 2 * (n + 1)) {
    throw FormatError(FormatError::Kind::kInvalid, "tree length does not match n");
  }
  try {
    CompressedGraph g;
    g.mode_ = labelled ? GraphMode::kLabelled : GraphMode::kUnlabelled;
    g.tie_break_ = static_cast<TieBreak>((flags & kTieMask) >> kTieShift);
    g.m_ = M;
    g.n_ = n;
    if (!labelled) g.tree_ = OrdinalTree::from_parentheses(std::move(parens));
    std::vector<BitVector> levels;
    levels.reserve(depth);
    for (auto& lv : raw) {
      levels.push_back(plain ? BitVector(lv.plain, BitEncoding::kPlain)
                             : BitVector::from_rrr(lv.size, std::move(lv.classes),
                                                   std::move(lv.offsets)));
    }
    g.wt_ = WaveletTree::from_levels(sigma, length, std::move(levels));
    return g;
  } catch (const FormatError&) {
    throw;
  } catch (const std::exception& e) {
    throw FormatError(FormatError::Kind::kInvalid, e.what());
  }
}

}  // namespace upag
