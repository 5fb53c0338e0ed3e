#pragma once

#include <cstdint>
#include <vector>

#include "phasedr/propagation.hpp"

namespace phasedr {

enum class ComplementBasis {
  /// Columns of the padded-grid DFT extension: the object columns come first,
  /// then the remaining cells of the first frequency block, then the cells of
  /// the further blocks mixed by an l-point DFT across patterns. Matrix-free.
  Structured,
  /// Dense orthonormal basis obtained from seeded Gaussian vectors projected
  /// off range(A*) and orthonormalized. Desk-scale only.
  SeededRandom,
};

/// Complex isometric extension A~* = [A*, A_perp*] in C^{N x n~}.
class ExtendedOp {
 public:
  ExtendedOp(PropagationOp base, Index ntilde,
             ComplementBasis basis = ComplementBasis::Structured, std::uint64_t seed = 0);

  const PropagationOp& base() const { return base_; }
  Index ntilde() const { return ntilde_; }
  Index n() const { return base_.n(); }
  Index N() const { return base_.N(); }
  ComplementBasis basis() const { return basis_; }
  /// Seed that produced a SeededRandom basis (after any retries).
  std::uint64_t seed_used() const { return seed_used_; }

  /// x in C^{n~} -> A~* x in C^N.
  CVec forward(const CVec& x) const;
  /// y in C^N -> A~ y in C^{n~}.
  CVec backward(const CVec& y) const;

 private:
  void build_structured();
  void build_random(std::uint64_t seed);

  PropagationOp base_;
  Index ntilde_;
  ComplementBasis basis_;
  std::uint64_t seed_used_ = 0;

  // Structured: cell order (block * L + cell) of every column, pattern
  // mixing matrix and masks extended by ones to the whole frequency grid.
  std::vector<std::size_t> order_;
  Eigen::MatrixXcd mixing_;
  std::vector<CVec> full_masks_;
  Index block_length_ = 0;

  // SeededRandom: the N x (n~ - n) complement block.
  Eigen::MatrixXcd complement_;
};

ExtendedOp extend_op(const PropagationOp& op, Index ntilde,
                     ComplementBasis basis = ComplementBasis::Structured,
                     std::uint64_t seed = 0);

}  // namespace phasedr
