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

// Sources of uniformly random bits. Every sampler in this library consumes
// randomness only through a BitStream.
//
// Seeded substreams are counter-mode SplitMix64: the stream key is
//
//   key = mix64(mix64(mix64(seed) ^ query) + kPhaseStride * (phase + 1))
//
// and word j of the stream is mix64(key + (j + 1) * kGolden), where mix64 is
// the SplitMix64 finalizer. A substream is therefore a pure function of
// (seed, query, phase) and does not depend on how many other substreams were
// opened or consumed before it.

#ifndef SECUREGAP_BIT_SOURCE_HPP_
#define SECUREGAP_BIT_SOURCE_HPP_

#include <concepts>
#include <cstdint>
#include <random>

#include "securegap/errors.hpp"

namespace securegap {

// Anything that hands out up to 64 fresh uniform bits at a time and keeps an
// exact count of the bits it has released.
template <typename S>
concept BitStream = requires(S& s, const S& cs, unsigned n) {
  { s.bits(n) } -> std::same_as<std::uint64_t>;
  { cs.bits_consumed() } -> std::convertible_to<std::uint64_t>;
};

namespace detail {

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
inline constexpr std::uint64_t kPhaseStride = 0xd1b54a32d192ed03ULL;

constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Buffers 64-bit words and releases them bit-exactly, so that a caller asking
// for w bits consumes exactly w bits of the underlying word sequence.
template <typename WordFn>
class BitBuffer {
 public:
  explicit BitBuffer(WordFn next_word) : next_word_(std::move(next_word)) {}

  std::uint64_t bits(unsigned n) {
    if (n > 64) throw InvalidArgument("BitStream::bits: at most 64 bits per call");
    if (n == 0) return 0;
    consumed_ += n;
    if (n <= available_) return take(n);
    // Drain what is left, then refill.
    const unsigned low_count = available_;
    const std::uint64_t low = take(low_count);
    word_ = next_word_();
    available_ = 64;
    const std::uint64_t high = take(n - low_count);
    return low | (high << low_count);
  }

  std::uint64_t bits_consumed() const { return consumed_; }

 private:
  std::uint64_t take(unsigned n) {
    if (n == 0) return 0;
    const std::uint64_t out = n == 64 ? word_ : (word_ & ((1ULL << n) - 1));
    word_ = n == 64 ? 0 : (word_ >> n);
    available_ -= n;
    return out;
  }

  WordFn next_word_;
  std::uint64_t word_ = 0;
  unsigned available_ = 0;
  std::uint64_t consumed_ = 0;
};

struct CounterWords {
  std::uint64_t key;
  std::uint64_t counter = 0;
  std::uint64_t operator()() { return mix64(key + (++counter) * kGolden); }
};

struct DeviceWords {
  std::random_device* device;
  std::uint64_t operator()() {
    return (static_cast<std::uint64_t>((*device)()) << 32) ^ (*device)();
  }
};

}  // namespace detail

// Identifies one substream of a BitSource. Mechanisms use query = 1..n for
// per-query noise with phase = refinement level, and query = 0 for
// mechanism-level draws such as the final shuffle.
struct StreamId {
  std::uint64_t query = 0;
  std::uint64_t phase = 0;
};

// Deterministic, reproducible bit stream. Single owner; not thread-safe.
class SeededBitStream {
 public:
  explicit SeededBitStream(std::uint64_t key) : buffer_(detail::CounterWords{key}) {}

  std::uint64_t bits(unsigned n) { return buffer_.bits(n); }
  bool bit() { return buffer_.bits(1) != 0; }
  std::uint64_t bits_consumed() const { return buffer_.bits_consumed(); }

 private:
  detail::BitBuffer<detail::CounterWords> buffer_;
};

// Seed plus substream derivation. Cheap to copy; opening a stream costs three
// mixing rounds.
class BitSource {
 public:
  explicit BitSource(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  static constexpr std::uint64_t stream_key(std::uint64_t seed, StreamId id) {
    return detail::mix64(detail::mix64(detail::mix64(seed) ^ id.query) +
                         detail::kPhaseStride * (id.phase + 1));
  }

  SeededBitStream stream(StreamId id) const {
    return SeededBitStream(stream_key(seed_, id));
  }
  SeededBitStream stream(std::uint64_t query, std::uint64_t phase) const {
    return stream(StreamId{query, phase});
  }

 private:
  std::uint64_t seed_;
};

// Non-reproducible stream backed by std::random_device, for deployments that
// want OS entropy instead of a seeded generator.
class EntropyBitStream {
 public:
  EntropyBitStream() : buffer_(detail::DeviceWords{&device_}) {}
  EntropyBitStream(const EntropyBitStream&) = delete;
  EntropyBitStream& operator=(const EntropyBitStream&) = delete;

  std::uint64_t bits(unsigned n) { return buffer_.bits(n); }
  std::uint64_t bits_consumed() const { return buffer_.bits_consumed(); }

 private:
  std::random_device device_;
  detail::BitBuffer<detail::DeviceWords> buffer_;
};

static_assert(BitStream<SeededBitStream>);
static_assert(BitStream<EntropyBitStream>);

}  // namespace securegap

#endif  // SECUREGAP_BIT_SOURCE_HPP_
