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

#include "upag/bit_vector.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <stdexcept>
#include <string>

#include "upag/entropy.hpp"

namespace upag {

namespace rrr {

namespace {

struct BinomialTable {
  // by_k[k][n] = C(n, k): rows are contiguous in n, which is the direction
  // the decoder searches.
  std::array<std::array<std::uint64_t, 64>, 64> by_k{};
  std::array<unsigned, 64> width{};

  constexpr BinomialTable() {
    for (unsigned n = 0; n < 64; ++n) {
      by_k[0][n] = 1;
      for (unsigned k = 1; k <= n; ++k) by_k[k][n] = by_k[k - 1][n - 1] + by_k[k][n - 1];
    }
    for (unsigned k = 0; k <= kRrrBlockBits; ++k) {
      const std::uint64_t count = by_k[k][kRrrBlockBits];
      width[k] = count <= 1 ? 0 : static_cast<unsigned>(std::bit_width(count - 1));
    }
  }
};

constexpr BinomialTable kTable{};

constexpr std::uint64_t low_bits(unsigned n) { return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }

// Sparse classes: a binary search per one beats walking every position.
constexpr unsigned kBinarySearchMaxOnes = 8;

}  // namespace

std::uint64_t binomial(unsigned n, unsigned k) {
  return k > n || n > 63 ? 0 : kTable.by_k[k][n];
}

unsigned offset_width(unsigned ones) { return kTable.width[ones]; }

std::uint64_t encode(std::uint64_t block) {
  std::uint64_t offset = 0;
  unsigned seen = 0;
  while (block != 0) {
    const unsigned pos = static_cast<unsigned>(std::countr_zero(block));
    ++seen;
    offset += kTable.by_k[seen][pos];
    block &= block - 1;
  }
  return offset;
}

std::uint64_t decode_from(unsigned ones, std::uint64_t offset, unsigned low) {
  if (ones == 0) return 0;
  if (ones == kRrrBlockBits) return ((std::uint64_t{1} << kRrrBlockBits) - 1) & ~low_bits(low);
  std::uint64_t block = 0;
  unsigned hi = kRrrBlockBits - 1;  // largest position still available
  for (unsigned i = ones; i >= 1; --i) {
    // The next one sits at the largest c with C(c, i) <= offset; once that
    // is below `low` the rest are too.
    const auto& row = kTable.by_k[i];
    if (low > 0 && row[low] > offset) break;
    const unsigned from = std::max(low, i - 1);
    unsigned c;
    if (ones <= kBinarySearchMaxOnes) {
      const auto* it = std::upper_bound(row.data() + from, row.data() + hi + 1, offset);
      c = static_cast<unsigned>(it - row.data()) - 1;
    } else {
      c = hi;
      while (row[c] > offset) --c;
    }
    block |= std::uint64_t{1} << c;
    offset -= row[c];
    if (c == 0) break;
    hi = c - 1;
  }
  return block;
}

std::uint64_t decode(unsigned ones, std::uint64_t offset) { return decode_from(ones, offset, 0); }

}  // namespace rrr

namespace {

// For a pair of 6-bit classes packed in 12 bits: their ones in the low byte
// and their offset widths in the high byte.
struct ClassPairTable {
  std::array<std::uint16_t, 4096> sums{};
  ClassPairTable() {
    for (unsigned i = 0; i < 4096; ++i) {
      const unsigned a = i & 63;
      const unsigned b = i >> 6;
      const unsigned ones = (a <= kRrrBlockBits ? a : 0) + (b <= kRrrBlockBits ? b : 0);
      const unsigned width = (a <= kRrrBlockBits ? rrr::offset_width(a) : 0) +
                             (b <= kRrrBlockBits ? rrr::offset_width(b) : 0);
      sums[i] = static_cast<std::uint16_t>(ones | (width << 8));
    }
  }
};

const ClassPairTable kClassPairs;

// Adds the ones and offset widths of blocks [from, to) to the totals.
void class_sums(const BitArray& classes, std::uint64_t from, std::uint64_t to,
                std::uint64_t& ones, std::uint64_t& width) {
  static_assert(kRrrClassWidth == 6);
  while (to - from >= 10) {
    std::uint64_t w = classes.read(from * 6, 60);
    for (int i = 0; i < 5; ++i, w >>= 12) {
      const std::uint16_t pair = kClassPairs.sums[w & 4095];
      ones += pair & 255;
      width += pair >> 8;
    }
    from += 10;
  }
  if (from < to) {
    const auto count = static_cast<unsigned>(to - from);
    std::uint64_t w = classes.read(from * 6, count * 6);
    for (unsigned i = 0; i < count; i += 2, w >>= 12) {
      // Beyond `count` the read is zero-padded; class 0 adds nothing.
      const std::uint16_t pair = kClassPairs.sums[w & 4095];
      ones += pair & 255;
      width += pair >> 8;
    }
  }
}

// Node boundaries of a wavelet tree recur across queries, so the same few
// blocks are decoded over and over.
struct DecodeCacheEntry {
  std::uint64_t id = 0;  // 0: empty
  std::uint64_t block = 0;
  std::uint64_t bits = 0;
};
constexpr unsigned kDecodeCacheBits = 12;
thread_local std::array<DecodeCacheEntry, std::size_t{1} << kDecodeCacheBits> decode_cache;

std::atomic<std::uint64_t> cache_ids{1};

std::uint64_t low_mask(unsigned bits) {
  return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
}

// 0-based index of the k-th (0-based) set bit of w.
unsigned select_in_word(std::uint64_t w, std::uint64_t k) {
  for (; k > 0; --k) w &= w - 1;
  return static_cast<unsigned>(std::countr_zero(w));
}

void validate(const DirectoryParams& p) {
  if (p.block_bits == 0 || p.block_bits % 64 != 0) {
    throw std::invalid_argument("block_bits must be a positive multiple of 64");
  }
  if (p.superblock_bits == 0 || p.superblock_bits % p.block_bits != 0 ||
      p.superblock_bits > 32768) {
    throw std::invalid_argument("superblock_bits must be a multiple of block_bits, <= 32768");
  }
  if (p.select_sample == 0 || p.rrr_superblock_blocks == 0) {
    throw std::invalid_argument("sampling rates must be positive");
  }
}

}  // namespace

BitVector::BitVector(const BitArray& bits, BitEncoding encoding, DirectoryParams params)
    : size_(bits.size()), encoding_(encoding), params_(params) {
  validate(params_);
  for (auto w : bits.words()) ones_ += static_cast<std::uint64_t>(std::popcount(w));
  if (encoding_ == BitEncoding::kPlain) {
    bits_ = bits;
    build_plain_directory();
  } else {
    const std::uint64_t blocks = rrr_block_count();
    for (std::uint64_t b = 0; b < blocks; ++b) {
      const std::uint64_t start = b * kRrrBlockBits;
      const auto len = static_cast<unsigned>(std::min<std::uint64_t>(kRrrBlockBits, size_ - start));
      const std::uint64_t word = bits.read(start, len);
      const auto cls = static_cast<unsigned>(std::popcount(word));
      classes_.append(cls, kRrrClassWidth);
      offsets_.append(rrr::encode(word), rrr::offset_width(cls));
    }
    build_rrr_directory();
  }
  build_select_samples();
}

BitVector BitVector::from_rrr(std::uint64_t size, BitArray classes, BitArray offsets,
                              DirectoryParams params) {
  validate(params);
  BitVector bv;
  bv.size_ = size;
  bv.encoding_ = BitEncoding::kRrr;
  bv.params_ = params;
  bv.classes_ = std::move(classes);
  bv.offsets_ = std::move(offsets);
  bv.bits_ = BitArray{};
  bv.ones_ = 0;
  const std::uint64_t blocks = bv.rrr_block_count();
  if (bv.classes_.size() != blocks * kRrrClassWidth) {
    throw std::invalid_argument("RRR class stream length mismatch");
  }
  std::uint64_t off = 0;
  for (std::uint64_t b = 0; b < blocks; ++b) {
    const unsigned cls = bv.rrr_class(b);
    const std::uint64_t len = std::min<std::uint64_t>(kRrrBlockBits, size - b * kRrrBlockBits);
    if (cls > len) throw std::invalid_argument("RRR class exceeds block length");
    const unsigned width = rrr::offset_width(cls);
    if (off + width > bv.offsets_.size()) {
      throw std::invalid_argument("RRR offset stream too short");
    }
    if (bv.offsets_.read(off, width) >= rrr::binomial(kRrrBlockBits, cls)) {
      throw std::invalid_argument("RRR offset out of range for its class");
    }
    if (len < kRrrBlockBits && (rrr::decode(cls, bv.offsets_.read(off, width)) >> len) != 0) {
      throw std::invalid_argument("RRR final block sets bits past the end");
    }
    off += width;
    bv.ones_ += cls;
  }
  if (off != bv.offsets_.size()) throw std::invalid_argument("RRR offset stream too long");
  bv.build_rrr_directory();
  bv.build_select_samples();
  return bv;
}

void BitVector::build_plain_directory() {
  const std::uint64_t sb_bits = params_.superblock_bits;
  const std::uint64_t blk_bits = params_.block_bits;
  const std::uint64_t nsb = std::max<std::uint64_t>(1, (size_ + sb_bits - 1) / sb_bits);
  const std::uint64_t nblk = (size_ + blk_bits - 1) / blk_bits;
  superblock_rank_.assign(nsb, 0);
  block_rank_.assign(nblk, 0);
  const auto words = bits_.words();
  std::uint64_t total = 0;
  std::uint64_t in_sb = 0;
  for (std::uint64_t blk = 0; blk < nblk; ++blk) {
    const std::uint64_t start = blk * blk_bits;
    if (start % sb_bits == 0) {
      superblock_rank_[start / sb_bits] = total;
      in_sb = 0;
    }
    block_rank_[blk] = static_cast<std::uint16_t>(in_sb);
    const std::uint64_t w_end = std::min<std::uint64_t>(words.size(), (start + blk_bits) / 64);
    for (std::uint64_t w = start / 64; w < w_end; ++w) {
      const auto c = static_cast<std::uint64_t>(std::popcount(words[w]));
      total += c;
      in_sb += c;
    }
  }
}

void BitVector::build_rrr_directory() {
  const std::uint64_t blocks = rrr_block_count();
  const std::uint64_t per_sb = params_.rrr_superblock_blocks;
  const std::uint64_t nsb = std::max<std::uint64_t>(1, (blocks + per_sb - 1) / per_sb);
  superblock_rank_.assign(nsb, 0);
  superblock_offset_.assign(nsb, 0);
  std::uint64_t rank = 0;
  std::uint64_t off = 0;
  for (std::uint64_t b = 0; b < blocks; ++b) {
    if (b % per_sb == 0) {
      superblock_rank_[b / per_sb] = rank;
      superblock_offset_[b / per_sb] = off;
    }
    const unsigned cls = rrr_class(b);
    rank += cls;
    off += rrr::offset_width(cls);
  }
}

std::uint64_t BitVector::superblock_span() const noexcept {
  return encoding_ == BitEncoding::kPlain
             ? params_.superblock_bits
             : std::uint64_t{params_.rrr_superblock_blocks} * kRrrBlockBits;
}

std::uint64_t BitVector::superblock_rank(bool bit, std::uint64_t sb) const {
  const std::uint64_t ones = superblock_rank_[sb];
  return bit ? ones : sb * superblock_span() - ones;
}

void BitVector::build_select_samples() {
  const std::uint64_t nsb = superblock_count();
  for (int bit = 0; bit < 2; ++bit) {
    auto& samples = select_sample_[bit];
    samples.clear();
    std::uint64_t next = 1;
    const std::uint64_t total = count(bit != 0);
    for (std::uint64_t sb = 0; sb < nsb && next <= total; ++sb) {
      const std::uint64_t end =
          sb + 1 < nsb ? superblock_rank(bit != 0, sb + 1) : total;
      while (next <= end) {
        samples.push_back(sb);
        next += params_.select_sample;
      }
    }
  }
}

std::uint64_t BitVector::next_cache_id() noexcept {
  return cache_ids.fetch_add(1, std::memory_order_relaxed);
}

std::uint64_t BitVector::rrr_decoded(std::uint64_t block, unsigned cls,
                                     std::uint64_t offset_pos) const {
  if (cls == 0) return 0;
  const std::uint64_t slot =
      ((block ^ (cache_id_ << 40)) * 0x9E3779B97F4A7C15ULL) >> (64 - kDecodeCacheBits);
  DecodeCacheEntry& e = decode_cache[slot];
  if (e.id == cache_id_ && e.block == block) return e.bits;
  e = {cache_id_, block,
       rrr::decode(cls, offsets_.read(offset_pos, rrr::offset_width(cls)))};
  return e.bits;
}

void BitVector::rrr_seek(std::uint64_t block, std::uint64_t& rank,
                         std::uint64_t& offset) const {
  const std::uint64_t per_sb = params_.rrr_superblock_blocks;
  const std::uint64_t sb = block / per_sb;
  const std::uint64_t start = sb * per_sb;
  const std::uint64_t end = std::min(start + per_sb, rrr_block_count());
  if (block - start <= end - block) {
    rank = superblock_rank_[sb];
    offset = superblock_offset_[sb];
    class_sums(classes_, start, block, rank, offset);
    return;
  }
  // The end of the last superblock is the end of the whole sequence.
  const bool last = sb + 1 == superblock_count();
  std::uint64_t ones = 0;
  std::uint64_t width = 0;
  class_sums(classes_, block, end, ones, width);
  rank = (last ? ones_ : superblock_rank_[sb + 1]) - ones;
  offset = (last ? offsets_.size() : superblock_offset_[sb + 1]) - width;
}

std::uint64_t BitVector::rrr_block_offset(std::uint64_t block) const {
  std::uint64_t rank = 0;
  std::uint64_t off = 0;
  rrr_seek(block, rank, off);
  return off;
}

std::uint64_t BitVector::rrr_block_bits(std::uint64_t block) const {
  return rrr_decoded(block, rrr_class(block), rrr_block_offset(block));
}

bool BitVector::get(std::uint64_t pos) const {
  if (encoding_ == BitEncoding::kPlain) return bits_[pos];
  return (rrr_block_bits(pos / kRrrBlockBits) >> (pos % kRrrBlockBits)) & 1U;
}

std::uint64_t BitVector::word(std::uint64_t w) const {
  if (encoding_ == BitEncoding::kPlain) return bits_.words()[w];
  std::uint64_t out = 0;
  const std::uint64_t end = std::min<std::uint64_t>(size_, (w + 1) * 64);
  for (std::uint64_t p = w * 64; p < end; ++p) {
    if (get(p)) out |= std::uint64_t{1} << (p - w * 64);
  }
  return out;
}

std::uint64_t BitVector::ones_before(std::uint64_t pos) const {
  if (pos >= size_) return ones_;
  if (pos == 0) return 0;
  if (encoding_ == BitEncoding::kPlain) {
    const std::uint64_t blk = pos / params_.block_bits;
    std::uint64_t r = superblock_rank_[pos / params_.superblock_bits] + block_rank_[blk];
    const auto words = bits_.words();
    const std::uint64_t last = pos / 64;
    for (std::uint64_t w = blk * params_.block_bits / 64; w < last; ++w) {
      r += static_cast<std::uint64_t>(std::popcount(words[w]));
    }
    return r + static_cast<std::uint64_t>(std::popcount(words[last] & low_mask(pos % 64)));
  }
  const std::uint64_t block = pos / kRrrBlockBits;
  std::uint64_t r = 0;
  std::uint64_t off = 0;
  rrr_seek(block, r, off);
  const std::uint64_t bits = rrr_decoded(block, rrr_class(block), off);
  return r + static_cast<std::uint64_t>(
                 std::popcount(bits & low_mask(static_cast<unsigned>(pos % kRrrBlockBits))));
}

void BitVector::ones_before_sorted(std::span<const std::uint64_t> pos,
                                   std::span<std::uint64_t> out) const {
  if (encoding_ == BitEncoding::kPlain) {
    for (std::size_t j = 0; j < pos.size(); ++j) out[j] = ones_before(pos[j]);
    return;
  }
  const std::uint64_t per_sb = params_.rrr_superblock_blocks;
  std::uint64_t b = 0;     // next block whose class is unread
  std::uint64_t r = 0;     // ones before block b
  std::uint64_t off = 0;   // offset stream position of block b
  bool positioned = false;
  std::uint64_t cached = ~std::uint64_t{0};
  std::uint64_t cached_bits = 0;  // decoded bits of block `cached`
  for (std::size_t j = 0; j < pos.size(); ++j) {
    const std::uint64_t x = pos[j];
    if (x >= size_) {
      out[j] = ones_;
      continue;
    }
    if (x == 0) {
      out[j] = 0;
      continue;
    }
    const std::uint64_t t = x / kRrrBlockBits;
    if (!positioned || t < b || t / per_sb != b / per_sb) {
      b = t;
      rrr_seek(t, r, off);
      positioned = true;
    }
    class_sums(classes_, b, t, r, off);
    b = t;
    const auto in_block = static_cast<unsigned>(x % kRrrBlockBits);
    if (cached != t) {
      // Positions come sorted, so nothing later in this block lies below
      // in_block: decode only from there up.
      cached_bits = rrr_decoded(t, rrr_class(t), off);
      cached = t;
    }
    out[j] = r + static_cast<std::uint64_t>(std::popcount(cached_bits & low_mask(in_block)));
  }
}

bool BitVector::access(std::uint64_t i) const {
  if (i == 0 || i > size_) {
    throw std::out_of_range("access(" + std::to_string(i) + ") outside [1.." +
                            std::to_string(size_) + "]");
  }
  return get(i - 1);
}

std::uint64_t BitVector::rank(bool bit, std::uint64_t i) const {
  if (i > size_) {
    throw std::out_of_range("rank at " + std::to_string(i) + " beyond length " +
                            std::to_string(size_));
  }
  const std::uint64_t ones = ones_before(i);
  return bit ? ones : i - ones;
}

std::uint64_t BitVector::select(bool bit, std::uint64_t k) const {
  if (k == 0 || k > count(bit)) {
    throw std::out_of_range("select" + std::string(bit ? "1" : "0") + "(" + std::to_string(k) +
                            ") exceeds occurrence count " + std::to_string(count(bit)));
  }
  const auto& samples = select_sample_[bit ? 1 : 0];
  const std::uint64_t s = (k - 1) / params_.select_sample;
  std::uint64_t lo = samples[s];
  std::uint64_t hi = s + 1 < samples.size() ? samples[s + 1] : superblock_count() - 1;
  // Last superblock whose preceding count is < k.
  while (lo < hi) {
    const std::uint64_t mid = lo + (hi - lo + 1) / 2;
    if (superblock_rank(bit, mid) < k) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  const std::uint64_t sb = lo;
  std::uint64_t remaining = k - superblock_rank(bit, sb);

  if (encoding_ == BitEncoding::kPlain) {
    const std::uint64_t blk_bits = params_.block_bits;
    const std::uint64_t first_blk = sb * params_.superblock_bits / blk_bits;
    const std::uint64_t end_blk =
        std::min<std::uint64_t>(block_rank_.size(), first_blk + params_.superblock_bits / blk_bits);
    std::uint64_t blk = first_blk;
    for (std::uint64_t b = first_blk + 1; b < end_blk; ++b) {
      const std::uint64_t before =
          bit ? block_rank_[b] : (b - first_blk) * blk_bits - block_rank_[b];
      if (before >= remaining) break;
      blk = b;
    }
    remaining -= bit ? block_rank_[blk] : (blk - first_blk) * blk_bits - block_rank_[blk];
    const auto words = bits_.words();
    for (std::uint64_t w = blk * blk_bits / 64; w < words.size(); ++w) {
      const std::uint64_t valid = low_mask(static_cast<unsigned>(
          std::min<std::uint64_t>(64, size_ - w * 64)));
      const std::uint64_t x = (bit ? words[w] : ~words[w]) & valid;
      const auto c = static_cast<std::uint64_t>(std::popcount(x));
      if (c >= remaining) return w * 64 + select_in_word(x, remaining - 1) + 1;
      remaining -= c;
    }
    throw std::logic_error("select directory inconsistent");
  }

  const std::uint64_t per_sb = params_.rrr_superblock_blocks;
  const std::uint64_t blocks = rrr_block_count();
  std::uint64_t off = superblock_offset_[sb];
  for (std::uint64_t b = sb * per_sb; b < blocks; ++b) {
    const unsigned cls = rrr_class(b);
    const std::uint64_t len = std::min<std::uint64_t>(kRrrBlockBits, size_ - b * kRrrBlockBits);
    const std::uint64_t c = bit ? cls : len - cls;
    const unsigned width = rrr::offset_width(cls);
    if (c >= remaining) {
      std::uint64_t x = rrr_decoded(b, cls, off);
      if (!bit) x = ~x & low_mask(static_cast<unsigned>(len));
      return b * kRrrBlockBits + select_in_word(x, remaining - 1) + 1;
    }
    remaining -= c;
    off += width;
  }
  throw std::logic_error("select directory inconsistent");
}

SpaceBits BitVector::space() const {
  SpaceBits s;
  const std::uint64_t samples = select_sample_[0].size() + select_sample_[1].size();
  if (encoding_ == BitEncoding::kPlain) {
    s.payload_bits = size_;
    s.directory_bits = superblock_rank_.size() * 64 + block_rank_.size() * 16 + samples * 64;
  } else {
    s.payload_bits = offsets_.size();
    s.directory_bits = classes_.size() + superblock_rank_.size() * 64 +
                       superblock_offset_.size() * 64 + samples * 64;
  }
  s.entropy_bound_bits = lg_binomial(size_, ones_);
  return s;
}

BitArray BitVector::decode() const {
  if (encoding_ == BitEncoding::kPlain) return bits_;
  BitArray out;
  const std::uint64_t blocks = rrr_block_count();
  std::uint64_t off = 0;
  for (std::uint64_t b = 0; b < blocks; ++b) {
    const unsigned cls = rrr_class(b);
    const unsigned width = rrr::offset_width(cls);
    const auto len = static_cast<unsigned>(
        std::min<std::uint64_t>(kRrrBlockBits, size_ - b * kRrrBlockBits));
    out.append(rrr::decode(cls, offsets_.read(off, width)), len);
    off += width;
  }
  return out;
}

}  // namespace upag
