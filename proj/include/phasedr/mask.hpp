#pragma once

#include <cstdint>
#include <iosfwd>

#include "phasedr/grid.hpp"
#include "phasedr/linalg.hpp"

namespace phasedr {

enum class MaskKind { UniformCircle, Identity };

/// Phase mask mu(m) = exp(i phi(m)) on the object support, row-major.
struct MaskSpec {
  RVec phases;
  MaskKind kind = MaskKind::Identity;
  std::uint64_t seed = 0;

  CVec values() const;
};

/// UniformCircle draws phases i.i.d. uniform on [0, 2 pi); Identity is all zeros.
MaskSpec make_mask(const GridShape& shape, MaskKind kind, std::uint64_t seed);

/// Text format: "PHASES n" followed by n phases in radians.
void write_mask(std::ostream& os, const MaskSpec& mask);
MaskSpec read_mask(std::istream& is);

}  // namespace phasedr
