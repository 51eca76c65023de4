#pragma once

// Seed streams. Every random choice in the library is drawn from a
// std::mt19937_64 seeded through these helpers so runs replay exactly.

#include <cstdint>
#include <random>
#include <string_view>

namespace nspcp {

std::uint64_t splitmix64(std::uint64_t x);

// Named sub-stream of a root seed ("verifier", "mc", "self-correction", ...).
std::uint64_t derive_seed(std::uint64_t root, std::string_view name);
// Indexed sub-stream (chunk number, query-set hash, ...).
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index);

using Rng = std::mt19937_64;

// Source of uniform bits for verifier randomness: either the bits of one
// enumerated outcome or a pseudorandom stream.
class BitSource {
 public:
  virtual ~BitSource() = default;
  // Next `count` bits (count <= 64) as the low bits of a word.
  virtual std::uint64_t take(int count) = 0;
};

// Replays the bits of a single integer, least significant first. Taking
// past the end yields zeros; callers size the outcome space exactly.
class EnumeratedBits final : public BitSource {
 public:
  explicit EnumeratedBits(std::uint64_t outcome) : rest_(outcome) {}
  std::uint64_t take(int count) override;

 private:
  std::uint64_t rest_;
};

class StreamBits final : public BitSource {
 public:
  explicit StreamBits(Rng& rng) : rng_(rng) {}
  std::uint64_t take(int count) override;

 private:
  Rng& rng_;
};

}  // namespace nspcp
