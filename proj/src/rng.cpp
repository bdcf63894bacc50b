#include "cmcts/rng.hpp"

namespace cmcts {

std::uint64_t derive_seed(const StreamKey& key) {
  std::uint64_t h = splitmix64_mix(key.root_seed + kSplitMix64Increment);
  for (const auto& [label, index] : key.path) {
    h = splitmix64_mix(h ^ fnv1a64(label));
    h = splitmix64_mix(h ^ (index + kSplitMix64Increment));
  }
  return h;
}

RandomStream derive_stream(const StreamKey& key) {
  return RandomStream(derive_seed(key));
}

std::uint64_t derive_seed(
    std::uint64_t root_seed,
    std::initializer_list<std::pair<std::string_view, std::uint64_t>> path) {
  StreamKey key;
  key.root_seed = root_seed;
  key.path.reserve(path.size());
  for (const auto& [label, index] : path) {
    key.path.emplace_back(std::string(label), index);
  }
  return derive_seed(key);
}

RandomStream derive_stream(
    std::uint64_t root_seed,
    std::initializer_list<std::pair<std::string_view, std::uint64_t>> path) {
  return RandomStream(derive_seed(root_seed, path));
}

}  // namespace cmcts
