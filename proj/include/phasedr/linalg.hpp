#pragma once

#include <complex>

#include <Eigen/Dense>

namespace phasedr {

using Complex = std::complex<double>;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;
using Index = Eigen::Index;

/// Real and imaginary parts of a complex vector, kept as separate blocks.
struct RealPair {
  RVec re;
  RVec im;
};

/// G(v) = (Re v, Im v).
RealPair realify(const CVec& v);
/// Inverse of realify. Throws ConfigError when the blocks differ in length.
CVec unrealify(const RealPair& p);

/// G(v) as one stacked vector of length 2N (real block on top).
RVec realify_stacked(const CVec& v);
CVec unrealify_stacked(const RVec& g);

/// Real inner product <u, v> = Re(u^H v) = G(u)^T G(v).
double real_inner(const CVec& u, const CVec& v);

/// Zero padding C^n -> C^target (x occupies the first n coordinates).
CVec embed(const CVec& x, Index target);
/// [x]_n: the first n coordinates.
CVec restrict_to(const CVec& x, Index n);

/// Componentwise y/|y|, with the value 1 wherever y(j) == 0.
CVec phase_factor(const CVec& y);

bool all_finite(const CVec& v);

}  // namespace phasedr
