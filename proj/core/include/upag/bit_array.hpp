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

#include <cassert>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace upag {

// Growable bit sequence packed least-significant-bit first into 64-bit words.
// Bit i lives in word i / 64 at bit i % 64. Unused high bits of the last word
// are kept zero.
class BitArray {
 public:
  BitArray() = default;
  explicit BitArray(std::uint64_t size) : words_((size + 63) / 64, 0), size_(size) {}

  static BitArray from_words(std::vector<std::uint64_t> words, std::uint64_t size) {
    if (words.size() != size / 64 + (size % 64 != 0 ? 1 : 0)) {
      throw std::invalid_argument("word count does not match bit length");
    }
    BitArray b;
    b.words_ = std::move(words);
    b.size_ = size;
    if (size % 64 != 0) b.words_.back() &= (std::uint64_t{1} << (size % 64)) - 1;
    return b;
  }

  std::uint64_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }
  std::span<const std::uint64_t> words() const noexcept { return words_; }

  bool operator[](std::uint64_t i) const {
    assert(i < size_);
    return (words_[i >> 6] >> (i & 63)) & 1U;
  }

  void set(std::uint64_t i, bool value) {
    assert(i < size_);
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (value) {
      words_[i >> 6] |= mask;
    } else {
      words_[i >> 6] &= ~mask;
    }
  }

  void push_back(bool value) {
    if (size_ % 64 == 0) words_.push_back(0);
    if (value) words_[size_ >> 6] |= std::uint64_t{1} << (size_ & 63);
    ++size_;
  }

  // Appends the low `width` bits of value (width <= 64).
  void append(std::uint64_t value, unsigned width) {
    if (width == 0) return;
    if (width < 64) value &= (std::uint64_t{1} << width) - 1;
    const unsigned offset = size_ & 63;
    if (offset == 0) {
      words_.push_back(value);
    } else {
      words_.back() |= value << offset;
      if (offset + width > 64) words_.push_back(value >> (64 - offset));
    }
    size_ += width;
  }

  // Reads `width` bits (<= 64) starting at bit pos.
  std::uint64_t read(std::uint64_t pos, unsigned width) const {
    if (width == 0) return 0;
    assert(pos + width <= size_);
    const std::uint64_t w = pos >> 6;
    const unsigned offset = pos & 63;
    std::uint64_t value = words_[w] >> offset;
    if (offset + width > 64) value |= words_[w + 1] << (64 - offset);
    if (width < 64) value &= (std::uint64_t{1} << width) - 1;
    return value;
  }

  friend bool operator==(const BitArray&, const BitArray&) = default;

 private:
  std::vector<std::uint64_t> words_;
  std::uint64_t size_ = 0;
};

}  // namespace upag
