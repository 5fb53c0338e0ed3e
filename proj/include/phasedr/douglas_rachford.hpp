#pragma once

#include "phasedr/extended.hpp"
#include "phasedr/projections.hpp"

namespace phasedr {

/// Fourier-domain DR map S_f(y) = y + A*[A(2 P2 y - y)]_X - P2 y.
CVec fdr_step(const CVec& y, const PropagationOp& op, const RVec& b, const SectorSpec& s);

/// Object-domain DR map on C^{n~}:
/// S(x) = x + [A~(2 b (.) w) - x]_X - A~(b (.) w), w = phase of A~* x.
/// With n~ = N and a single pattern this is HIO with parameter one.
CVec odr_step(const CVec& x, const ExtendedOp& ext, const RVec& b, const SectorSpec& s);

}  // namespace phasedr
