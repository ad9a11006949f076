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

#include <doctest.h>

#include <cmath>
#include <optional>
#include <vector>

#include "fixtures.hpp"
#include "upag/bit_vector.hpp"
#include "upag/entropy.hpp"

using namespace upag;

namespace {

BitArray from_string(const std::string& s) {
  BitArray b;
  for (char c : s) b.push_back(c == '1');
  return b;
}

// Linear-scan reference: rank[i] = ones in B[1..i]; positions 1-based.
struct ScanOracle {
  explicit ScanOracle(const BitArray& b) : rank1(b.size() + 1, 0) {
    for (std::uint64_t i = 0; i < b.size(); ++i) {
      rank1[i + 1] = rank1[i] + (b[i] ? 1 : 0);
      (b[i] ? ones : zeros).push_back(i + 1);
    }
  }
  std::vector<std::uint64_t> rank1;
  std::vector<std::uint64_t> ones;
  std::vector<std::uint64_t> zeros;
};

void check_against_scan(const BitArray& bits, BitEncoding enc, DirectoryParams params = {}) {
  const BitVector bv(bits, enc, params);
  const ScanOracle o(bits);
  REQUIRE(bv.size() == bits.size());
  REQUIRE(bv.ones() == o.ones.size());
  for (std::uint64_t i = 0; i <= bits.size(); ++i) {
    if (bv.rank1(i) != o.rank1[i] || bv.rank0(i) != i - o.rank1[i]) {
      FAIL("rank mismatch at " << i);
    }
    if (i >= 1 && bv.access(i) != bits[i - 1]) FAIL("access mismatch at " << i);
  }
  for (std::uint64_t k = 1; k <= o.ones.size(); ++k) {
    if (bv.select1(k) != o.ones[k - 1]) FAIL("select1 mismatch at " << k);
  }
  for (std::uint64_t k = 1; k <= o.zeros.size(); ++k) {
    if (bv.select0(k) != o.zeros[k - 1]) FAIL("select0 mismatch at " << k);
  }
  CHECK_THROWS_AS(bv.select1(o.ones.size() + 1), std::out_of_range);
  CHECK_THROWS_AS(bv.select0(o.zeros.size() + 1), std::out_of_range);
  CHECK(bv.decode() == bits);
}

}  // namespace

TEST_SUITE("bit_vector") {
  TEST_CASE("small hand example") {
    for (auto enc : {BitEncoding::kPlain, BitEncoding::kRrr}) {
      const BitVector bv(from_string("10110"), enc);
      CHECK(bv.rank1(3) == 2);
      CHECK(bv.select1(2) == 3);
      CHECK(bv.access(4));
      CHECK(bv.rank1(0) == 0);
      CHECK_THROWS_AS(bv.access(0), std::out_of_range);
      CHECK_THROWS_AS(bv.access(6), std::out_of_range);
      CHECK_THROWS_AS(bv.rank1(6), std::out_of_range);
    }
  }

  TEST_CASE("all zeros") {
    for (auto enc : {BitEncoding::kPlain, BitEncoding::kRrr}) {
      const BitVector bv(BitArray(8), enc);
      CHECK(bv.rank1(8) == 0);
      CHECK_THROWS_AS(bv.select1(1), std::out_of_range);
      CHECK(bv.select0(8) == 8);
    }
  }

  TEST_CASE("empty vector") {
    for (auto enc : {BitEncoding::kPlain, BitEncoding::kRrr}) {
      const BitVector bv(BitArray{}, enc);
      CHECK(bv.size() == 0);
      CHECK(bv.rank1(0) == 0);
      CHECK_THROWS_AS(bv.select0(1), std::out_of_range);
    }
  }

  TEST_CASE("exhaustive agreement with a linear scan") {
    Rng rng(21);
    const std::vector<std::uint64_t> sizes{1, 62, 63, 64, 65, 126, 1023, 1024, 1025, 10000};
    const std::vector<std::uint64_t> density{0, 3, 100, 512, 1000, 1024};
    for (auto n : sizes) {
      for (auto d : density) {
        CAPTURE(n);
        CAPTURE(d);
        const BitArray bits = upag::testing::random_bits(rng, n, d);
        check_against_scan(bits, BitEncoding::kPlain);
        check_against_scan(bits, BitEncoding::kRrr);
      }
    }
  }

  TEST_CASE("long vectors cross superblocks and select samples") {
    Rng rng(22);
    for (auto d : {std::uint64_t{20}, std::uint64_t{512}, std::uint64_t{1010}}) {
      const BitArray bits = upag::testing::random_bits(rng, 150000, d);
      check_against_scan(bits, BitEncoding::kPlain);
      check_against_scan(bits, BitEncoding::kRrr);
    }
  }

  TEST_CASE("non-default directory parameters") {
    Rng rng(23);
    DirectoryParams p;
    p.superblock_bits = 256;
    p.block_bits = 64;
    p.select_sample = 7;
    p.rrr_superblock_blocks = 3;
    const BitArray bits = upag::testing::random_bits(rng, 5000, 300);
    check_against_scan(bits, BitEncoding::kPlain, p);
    check_against_scan(bits, BitEncoding::kRrr, p);
  }

  TEST_CASE("rank/select inverse identities") {
    Rng rng(24);
    const BitArray bits = upag::testing::random_bits(rng, 20000, 400);
    const BitVector bv(bits, BitEncoding::kRrr);
    for (std::uint64_t k = 1; k <= bv.ones(); ++k) CHECK_EQ(bv.rank1(bv.select1(k)), k);
    for (std::uint64_t i = 1; i <= bv.size(); i += 7) {
      const auto r = bv.rank1(i);
      if (r >= 1) CHECK(bv.select1(r) <= i);
    }
  }

  TEST_CASE("block code round trip") {
    Rng rng(25);
    for (int rep = 0; rep < 20000; ++rep) {
      const std::uint64_t block = rng.next() & ((std::uint64_t{1} << kRrrBlockBits) - 1);
      const auto ones = static_cast<unsigned>(std::popcount(block));
      const auto offset = rrr::encode(block);
      CHECK(offset < rrr::binomial(kRrrBlockBits, ones));
      CHECK(rrr::decode(ones, offset) == block);
    }
    CHECK(rrr::offset_width(0) == 0);
    CHECK(rrr::offset_width(kRrrBlockBits) == 0);
    CHECK(rrr::binomial(63, 31) > 0);
  }

  TEST_CASE("space accounting") {
    Rng rng(26);
    const BitArray bits = upag::testing::random_bits(rng, 100000, 50);
    const BitVector plain(bits, BitEncoding::kPlain);
    const BitVector rrr(bits, BitEncoding::kRrr);
    CHECK(plain.space().payload_bits == bits.size());
    const double bound = lg_binomial(bits.size(), rrr.ones());
    CHECK(rrr.space().entropy_bound_bits == doctest::Approx(bound));
    CHECK(plain.space().entropy_bound_bits == doctest::Approx(bound));
    // Offsets alone: at most one bit of ceiling slack per block.
    const double blocks = std::ceil(static_cast<double>(bits.size()) / kRrrBlockBits);
    CHECK(static_cast<double>(rrr.space().payload_bits) <= bound + blocks);
    CHECK(rrr.space().payload_bits < plain.space().payload_bits);
  }

  TEST_CASE("from_rrr rejects inconsistent streams") {
    Rng rng(27);
    const BitVector bv(upag::testing::random_bits(rng, 500, 300), BitEncoding::kRrr);
    CHECK(BitVector::from_rrr(500, bv.rrr_classes(), bv.rrr_offsets()).decode() == bv.decode());
    CHECK_THROWS(BitVector::from_rrr(600, bv.rrr_classes(), bv.rrr_offsets()));
    BitArray shorter;
    for (std::uint64_t i = 0; i + 1 < bv.rrr_offsets().size(); ++i) {
      shorter.push_back(bv.rrr_offsets()[i]);
    }
    CHECK_THROWS(BitVector::from_rrr(500, bv.rrr_classes(), shorter));
  }

  TEST_CASE("decoded blocks never leak between vectors") {
    Rng rng(28);
    // Rebuild into the same storage many times; each content must answer
    // for itself even though earlier ones were decoded at the same address.
    std::optional<BitVector> slot;
    for (int round = 0; round < 20; ++round) {
      const BitArray bits = upag::testing::random_bits(rng, 4000, 100 + 40 * round);
      slot.emplace(bits, BitEncoding::kRrr);
      std::uint64_t ones = 0;
      for (std::uint64_t i = 0; i < bits.size(); ++i) {
        REQUIRE(slot->ones_before(i) == ones);
        REQUIRE(slot->get(i) == bits[i]);
        ones += bits[i] ? 1 : 0;
      }
    }
    const BitArray a = upag::testing::random_bits(rng, 3000, 200);
    const BitArray b = upag::testing::random_bits(rng, 3000, 800);
    const BitVector va(a, BitEncoding::kRrr);
    BitVector vb(b, BitEncoding::kRrr);
    const BitVector copy = va;
    for (std::uint64_t i = 0; i < a.size(); i += 7) {
      CHECK(va.get(i) == a[i]);
      CHECK(vb.get(i) == b[i]);
      CHECK(copy.get(i) == a[i]);
    }
    vb = va;
    for (std::uint64_t i = 0; i < a.size(); i += 7) CHECK(vb.get(i) == a[i]);
  }
}
