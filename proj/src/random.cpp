#include "nspcp/random.hpp"

namespace nspcp {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t root, std::string_view name) {
  // FNV-1a over the name, then mixed with the root.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : name) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return splitmix64(root ^ splitmix64(h));
}

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) {
  return splitmix64(splitmix64(root) ^ (index * 0xd1b54a32d192ed03ULL + 1));
}

std::uint64_t EnumeratedBits::take(int count) {
  if (count <= 0) return 0;
  if (count >= 64) {
    const std::uint64_t out = rest_;
    rest_ = 0;
    return out;
  }
  const std::uint64_t out = rest_ & ((std::uint64_t{1} << count) - 1);
  rest_ >>= count;
  return out;
}

std::uint64_t StreamBits::take(int count) {
  if (count <= 0) return 0;
  const std::uint64_t word = rng_();
  return count >= 64 ? word : word & ((std::uint64_t{1} << count) - 1);
}

}  // namespace nspcp
