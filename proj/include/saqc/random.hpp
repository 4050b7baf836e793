#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace saqc {

using Rng = std::mt19937_64;

// Named substream of a master seed. Every random draw in the library comes
// from one of these so that results depend only on (seed, stream, index).
inline Rng substream(std::uint64_t master_seed, std::string_view name, std::uint64_t index = 0) {
  std::vector<std::uint32_t> words;
  words.reserve(name.size() + 4);
  words.push_back(static_cast<std::uint32_t>(master_seed));
  words.push_back(static_cast<std::uint32_t>(master_seed >> 32));
  for (char c : name) words.push_back(static_cast<unsigned char>(c));
  words.push_back(static_cast<std::uint32_t>(index));
  words.push_back(static_cast<std::uint32_t>(index >> 32));
  std::seed_seq seq(words.begin(), words.end());
  return Rng(seq);
}

}  // namespace saqc
