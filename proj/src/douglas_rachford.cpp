#include "phasedr/douglas_rachford.hpp"

#include "phasedr/errors.hpp"

namespace phasedr {

CVec fdr_step(const CVec& y, const PropagationOp& op, const RVec& b, const SectorSpec& s) {
  if (y.size() != op.N() || b.size() != op.N()) {
    throw ConfigError("fdr_step: iterate and data must have length N = " +
                      std::to_string(op.N()));
  }
  if (!all_finite(y)) throw NumericalError("fdr_step: non-finite iterate");
  const CVec p = proj_P2(y, b);
  const CVec reflected = 2.0 * p - y;
  return y + op.forward(sector_project(op.backward(reflected), s)) - p;
}

CVec odr_step(const CVec& x, const ExtendedOp& ext, const RVec& b, const SectorSpec& s) {
  if (x.size() != ext.ntilde() || b.size() != ext.N()) {
    throw ConfigError("odr_step: iterate must have length n~ = " +
                      std::to_string(ext.ntilde()) + " and data length N = " +
                      std::to_string(ext.N()));
  }
  if (!all_finite(x)) throw NumericalError("odr_step: non-finite iterate");
  const CVec q = ext.backward(proj_P2(ext.forward(x), b));
  return x + constrain(2.0 * q - x, s, ext.n()) - q;
}

}  // namespace phasedr
