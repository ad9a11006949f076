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

#include "upag/bit_array.hpp"

namespace upag {

// Bit accounting shared by every succinct structure.
struct SpaceBits {
  std::uint64_t payload_bits = 0;    // encoded data
  std::uint64_t directory_bits = 0;  // rank/select/navigation support
  double entropy_bound_bits = 0.0;   // information-theoretic target

  std::uint64_t total_bits() const noexcept { return payload_bits + directory_bits; }

  SpaceBits& operator+=(const SpaceBits& o) {
    payload_bits += o.payload_bits;
    directory_bits += o.directory_bits;
    entropy_bound_bits += o.entropy_bound_bits;
    return *this;
  }
};

enum class BitEncoding : std::uint8_t {
  kPlain,  // raw bits, n payload bits
  kRrr,    // 63-bit blocks stored as (class, offset); payload = offsets only
};

// Directory layout. Plain mode: a 64-bit absolute count per superblock and a
// 16-bit relative count per block. RRR mode: absolute rank and offset pointer
// every rrr_superblock_blocks blocks. Both sample the superblock of every
// select_sample-th occurrence of each bit value.
struct DirectoryParams {
  std::uint32_t superblock_bits = 1024;
  std::uint32_t block_bits = 64;
  std::uint32_t select_sample = 4096;
  std::uint32_t rrr_superblock_blocks = 32;
};

inline constexpr unsigned kRrrBlockBits = 63;
inline constexpr unsigned kRrrClassWidth = 6;

// Static bitvector with access/rank/select. Positions follow B[1..n]:
// access(i) and select() are 1-based, rank(a, i) counts a-bits in B[1..i]
// (so rank(a, 0) == 0).
class BitVector {
 public:
  BitVector() : BitVector(BitArray{}) {}
  explicit BitVector(const BitArray& bits, BitEncoding encoding = BitEncoding::kPlain,
                     DirectoryParams params = {});

  // Rebuilds an RRR vector from its serialized class and offset streams.
  // Throws std::invalid_argument if the streams are inconsistent.
  static BitVector from_rrr(std::uint64_t size, BitArray classes, BitArray offsets,
                            DirectoryParams params = {});

  std::uint64_t size() const noexcept { return size_; }
  std::uint64_t ones() const noexcept { return ones_; }
  std::uint64_t count(bool bit) const noexcept { return bit ? ones_ : size_ - ones_; }
  BitEncoding encoding() const noexcept { return encoding_; }
  const DirectoryParams& params() const noexcept { return params_; }

  bool access(std::uint64_t i) const;
  std::uint64_t rank(bool bit, std::uint64_t i) const;
  std::uint64_t select(bool bit, std::uint64_t k) const;

  std::uint64_t rank1(std::uint64_t i) const { return rank(true, i); }
  std::uint64_t rank0(std::uint64_t i) const { return rank(false, i); }
  std::uint64_t select1(std::uint64_t k) const { return select(true, k); }
  std::uint64_t select0(std::uint64_t k) const { return select(false, k); }

  // 0-based access without bounds reporting; pos < size().
  bool get(std::uint64_t pos) const;
  // Number of ones in positions [0, pos); pos <= size().
  std::uint64_t ones_before(std::uint64_t pos) const;
  // ones_before for each of `pos` (non-decreasing) into `out`. Nearby
  // positions share one directory scan and one block decode.
  void ones_before_sorted(std::span<const std::uint64_t> pos, std::span<std::uint64_t> out) const;
  // 64 bits starting at 0-based word index w (plain mode) or the decoded
  // word covering bits [64w, 64w+64) in either mode.
  std::uint64_t word(std::uint64_t w) const;

  SpaceBits space() const;
  BitArray decode() const;

  // Raw streams, for serialization.
  const BitArray& plain_bits() const noexcept { return bits_; }
  const BitArray& rrr_classes() const noexcept { return classes_; }
  const BitArray& rrr_offsets() const noexcept { return offsets_; }

 private:
  void build_plain_directory();
  void build_rrr_directory();
  void build_select_samples();

  std::uint64_t rrr_block_count() const noexcept {
    return (size_ + kRrrBlockBits - 1) / kRrrBlockBits;
  }
  unsigned rrr_class(std::uint64_t block) const {
    return static_cast<unsigned>(classes_.read(block * kRrrClassWidth, kRrrClassWidth));
  }
  // Decoded bits of RRR block b, plus the bit offset of its encoding.
  std::uint64_t rrr_block_bits(std::uint64_t block) const;
  std::uint64_t rrr_block_offset(std::uint64_t block) const;
  // Ones before `block` and its offset-stream position, scanning from
  // whichever superblock boundary is nearer.
  void rrr_seek(std::uint64_t block, std::uint64_t& rank, std::uint64_t& offset) const;

  // Superblock index in [0, superblock count) containing the k-th bit value.
  std::uint64_t superblock_rank(bool bit, std::uint64_t sb) const;
  std::uint64_t superblock_count() const noexcept { return superblock_rank_.size(); }
  std::uint64_t superblock_span() const noexcept;

  // Decoded RRR block, through a small per-thread cache.
  std::uint64_t rrr_decoded(std::uint64_t block, unsigned cls, std::uint64_t offset_pos) const;

  // Identifies this content in the decode cache. Copies share it, which is
  // fine since the content is immutable.
  std::uint64_t cache_id_ = next_cache_id();
  static std::uint64_t next_cache_id() noexcept;

  std::uint64_t size_ = 0;
  std::uint64_t ones_ = 0;
  BitEncoding encoding_ = BitEncoding::kPlain;
  DirectoryParams params_;

  BitArray bits_;     // plain payload
  BitArray classes_;  // RRR classes, kRrrClassWidth bits each
  BitArray offsets_;  // RRR offsets, variable width

  std::vector<std::uint64_t> superblock_rank_;    // ones before superblock
  std::vector<std::uint16_t> block_rank_;         // plain: ones before block within superblock
  std::vector<std::uint64_t> superblock_offset_;  // RRR: offset stream position
  std::vector<std::uint64_t> select_sample_[2];   // superblock of every k-th occurrence
};

namespace rrr {

// binom(n, k) for n <= 63; 0 when k > n.
std::uint64_t binomial(unsigned n, unsigned k);
// Bits needed for an offset of a block with `ones` set bits.
unsigned offset_width(unsigned ones);
// Colex rank of the set-bit pattern among all 63-bit words with the same popcount.
std::uint64_t encode(std::uint64_t block);
std::uint64_t decode(unsigned ones, std::uint64_t offset);
// Only the bits at positions >= low; the lower ones are left clear.
std::uint64_t decode_from(unsigned ones, std::uint64_t offset, unsigned low);

}  // namespace rrr

}  // namespace upag
