#include "phasedr/rng.hpp"

namespace phasedr {

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

CVec complex_gaussian(Index n, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CVec v(n);
  for (Index j = 0; j < n; ++j) {
    const double re = normal(rng);
    const double im = normal(rng);
    v[j] = Complex(re, im);
  }
  return v;
}

RVec real_gaussian(Index n, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  RVec v(n);
  for (Index j = 0; j < n; ++j) v[j] = normal(rng);
  return v;
}

}  // namespace phasedr
