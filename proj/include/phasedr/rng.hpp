#pragma once

#include <cstdint>
#include <random>

#include "phasedr/linalg.hpp"

namespace phasedr {

using Rng = std::mt19937_64;

/// Independent stream tags so that images, masks, initial guesses and noise
/// drawn for the same trial never share a generator state.
enum class Stream : std::uint64_t {
  Mask = 1,
  Image = 2,
  Init = 3,
  Noise = 4,
  Complement = 5,
  Probe = 6,
};

/// splitmix64 mix of (base, stream); deterministic and platform independent.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);
inline std::uint64_t derive_seed(std::uint64_t base, Stream s) {
  return derive_seed(base, static_cast<std::uint64_t>(s));
}

/// i.i.d. complex entries with independent N(0,1) real and imaginary parts.
CVec complex_gaussian(Index n, Rng& rng);
RVec real_gaussian(Index n, Rng& rng);

}  // namespace phasedr
