// Copyright 2026 The securegap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "securegap/bit_source.hpp"

#include <cstdint>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "securegap/errors.hpp"

namespace securegap {
namespace {

// Reference SplitMix64 output function, written out independently.
std::uint64_t splitmix_finalize(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}

std::uint64_t reference_word(std::uint64_t seed, std::uint64_t query, std::uint64_t phase,
                             std::uint64_t j) {
  const std::uint64_t key =
      splitmix_finalize(splitmix_finalize(splitmix_finalize(seed) ^ query) +
                        0xd1b54a32d192ed03ULL * (phase + 1));
  return splitmix_finalize(key + (j + 1) * 0x9e3779b97f4a7c15ULL);
}

TEST(BitSourceTest, WordsMatchReferenceDerivation) {
  for (std::uint64_t seed : {0ULL, 1ULL, 0xdeadbeefULL}) {
    for (std::uint64_t q : {0ULL, 1ULL, 17ULL}) {
      for (std::uint64_t p : {0ULL, 3ULL}) {
        auto s = BitSource(seed).stream(q, p);
        for (std::uint64_t j = 0; j < 4; ++j) {
          EXPECT_EQ(s.bits(64), reference_word(seed, q, p, j));
        }
      }
    }
  }
}

TEST(BitSourceTest, SplitReadsReassembleLowBitsFirst) {
  auto whole = BitSource(9).stream(2, 1);
  auto split = BitSource(9).stream(2, 1);
  const std::uint64_t w0 = whole.bits(64);
  const std::uint64_t w1 = whole.bits(64);
  const std::uint64_t a = split.bits(3);
  const std::uint64_t b = split.bits(64);
  const std::uint64_t c = split.bits(61);
  EXPECT_EQ(a, w0 & 0x7);
  EXPECT_EQ(b, (w0 >> 3) | (w1 << 61));
  EXPECT_EQ(c, w1 >> 3);
  EXPECT_EQ(split.bits_consumed(), 128u);
}

TEST(BitSourceTest, CountsBitsExactly) {
  auto s = BitSource(4).stream(0, 0);
  std::uint64_t expected = 0;
  for (unsigned n : {1u, 7u, 0u, 64u, 13u, 5u, 33u}) {
    const std::uint64_t v = s.bits(n);
    if (n < 64) {
      EXPECT_LT(v, 1ULL << n);
    }
    expected += n;
    EXPECT_EQ(s.bits_consumed(), expected);
  }
  EXPECT_THROW(s.bits(65), InvalidArgument);
}

TEST(BitSourceTest, SubstreamsAreIndependentOfOpeningOrder) {
  const BitSource src(123);
  auto first = src.stream(5, 2);
  const std::uint64_t a = first.bits(64);
  auto other = src.stream(6, 2);
  other.bits(64);
  auto again = src.stream(5, 2);
  EXPECT_EQ(again.bits(64), a);
}

TEST(BitSourceTest, DistinctStreamsDiffer) {
  std::set<std::uint64_t> firsts;
  for (std::uint64_t q = 0; q < 50; ++q) {
    for (std::uint64_t p = 0; p < 20; ++p) firsts.insert(BitSource(1).stream(q, p).bits(64));
  }
  EXPECT_EQ(firsts.size(), 1000u);
  EXPECT_NE(BitSource(1).stream(0, 0).bits(64), BitSource(2).stream(0, 0).bits(64));
}

TEST(BitSourceTest, BitBalance) {
  auto s = BitSource(77).stream(1, 0);
  const int n = 64000;
  int ones = 0;
  for (int i = 0; i < n; ++i) ones += s.bit() ? 1 : 0;
  // 3 sigma = 3 * sqrt(n / 4).
  EXPECT_NEAR(ones, n / 2, 3 * 127);
}

TEST(BitSourceTest, EntropyStreamProducesBits) {
  EntropyBitStream s;
  std::uint64_t acc = 0;
  for (int i = 0; i < 8; ++i) acc |= s.bits(64);
  EXPECT_NE(acc, 0u);
  EXPECT_EQ(s.bits_consumed(), 512u);
}

}  // namespace
}  // namespace securegap
