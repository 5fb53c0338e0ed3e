#pragma once

#include <cstdint>
#include <iosfwd>

#include "phasedr/propagation.hpp"

namespace phasedr {

struct MeasuredData {
  RVec b;
  double nsr = 0.0;
  std::uint64_t noise_seed = 0;
};

/// b = |A* x0|. For nsr > 0 a seeded Gaussian perturbation is added to the
/// magnitudes, scaled so that ||eps|| / ||A* x0|| == nsr, then negatives are
/// clamped to zero.
MeasuredData synthesize_data(const PropagationOp& op, const CVec& x0, double nsr,
                             std::uint64_t noise_seed);

/// Text format: "B N" followed by N nonnegative reals.
void write_data(std::ostream& os, const MeasuredData& data);
MeasuredData read_data(std::istream& is);

}  // namespace phasedr
