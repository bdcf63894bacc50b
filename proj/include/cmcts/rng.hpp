#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cmcts {

// All randomness in this project flows through one generator: splitmix64
// (Steele, Lea, Flood 2014). Streams are derived from a (root seed, path)
// key by the hash construction in derive_seed(); the exact sequences are
// frozen in tests/golden/rng_golden.txt so alternate implementations can
// check bit-compatibility.
inline constexpr std::uint64_t kSplitMix64Increment = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// FNV-1a on the label bytes, used only to fold stream labels into the key.
constexpr std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Identifies one named random stream. Distinct paths give independent
// streams; the same path always gives the same stream.
struct StreamKey {
  std::uint64_t root_seed = 0;
  std::vector<std::pair<std::string, std::uint64_t>> path;
};

// Pure function of the key:
//   h = mix(root_seed + INC)
//   for each (label, index): h = mix(h ^ fnv1a64(label)); h = mix(h ^ (index + INC))
std::uint64_t derive_seed(const StreamKey& key);

class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += kSplitMix64Increment;
    return splitmix64_mix(state_);
  }

  // Uniform in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform in [lo, hi]; consumes exactly one draw, even when lo == hi.
  double uniform(double lo, double hi) {
    const double u = next_double();
    return lo + (hi - lo) * u;
  }

 private:
  std::uint64_t state_;
};

RandomStream derive_stream(const StreamKey& key);

// Convenience for the common literal-path case.
RandomStream derive_stream(
    std::uint64_t root_seed,
    std::initializer_list<std::pair<std::string_view, std::uint64_t>> path);

std::uint64_t derive_seed(
    std::uint64_t root_seed,
    std::initializer_list<std::pair<std::string_view, std::uint64_t>> path);

}  // namespace cmcts
