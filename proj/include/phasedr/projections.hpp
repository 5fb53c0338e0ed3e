#pragma once

#include "phasedr/propagation.hpp"

namespace phasedr {

/// Object-domain constraint: each pixel's principal argument lies in
/// [-alpha pi, beta pi]. Inactive means no constraint (X = C^n).
struct SectorSpec {
  double alpha = 0.0;
  double beta = 0.0;
  bool active = false;

  static SectorSpec none() { return {}; }
  /// Throws ConfigError unless 0 <= alpha, beta and alpha + beta <= 1
  /// (the sector must be a convex cone).
  static SectorSpec make(double alpha, double beta);
};

/// Nearest point of the sector, componentwise. Only the first n entries are
/// projected; later entries (padding) are set to zero. n = -1 means all.
CVec sector_project(const CVec& x, const SectorSpec& s, Index n = -1);

/// [x]_X on the first n coordinates, zero on the rest. With an inactive
/// sector this is plain truncation to C^n embedded back.
CVec constrain(const CVec& x, const SectorSpec& s, Index n);

/// P1 y = A* [A y]_X.
CVec proj_P1(const CVec& y, const PropagationOp& op, const SectorSpec& s);
/// P2 y = b (.) y/|y|, using phase 1 where y(j) == 0.
CVec proj_P2(const CVec& y, const RVec& b);

}  // namespace phasedr
