#include "phasedr/extended.hpp"

#include <cmath>
#include <numbers>

#include "phasedr/errors.hpp"
#include "phasedr/rng.hpp"

namespace phasedr {

ExtendedOp::ExtendedOp(PropagationOp base, Index ntilde, ComplementBasis basis,
                       std::uint64_t seed)
    : base_(std::move(base)), ntilde_(ntilde), basis_(basis) {
  if (ntilde_ < base_.n() || ntilde_ > base_.N()) {
    throw ConfigError("extended dimension " + std::to_string(ntilde_) + " outside [" +
                      std::to_string(base_.n()) + ", " + std::to_string(base_.N()) + "]");
  }
  // A single oversampled pattern extended to the full grid is the unitary
  // padded DFT itself, whichever basis was asked for.
  const bool full_single = base_.patterns().size() == 1 && ntilde_ == base_.N();
  if (basis_ == ComplementBasis::SeededRandom && full_single) {
    basis_ = ComplementBasis::Structured;
  }
  if (basis_ == ComplementBasis::Structured) {
    build_structured();
  } else {
    build_random(seed);
  }
}

void ExtendedOp::build_structured() {
  const auto& patterns = base_.patterns();
  const Index ell = static_cast<Index>(patterns.size());
  block_length_ = base_.pattern_length(0);
  for (std::size_t k = 1; k < patterns.size(); ++k) {
    if (base_.pattern_length(k) != block_length_) {
      throw ConfigError("structured extension needs equal pattern lengths");
    }
  }
  const auto& positions = base_.dft(0).positions();

  order_.clear();
  order_.reserve(static_cast<std::size_t>(base_.N()));
  std::vector<bool> is_object(static_cast<std::size_t>(block_length_), false);
  for (auto p : positions) {
    order_.push_back(p);
    is_object[p] = true;
  }
  for (std::size_t j = 0; j < is_object.size(); ++j) {
    if (!is_object[j]) order_.push_back(j);
  }
  for (Index r = 1; r < ell; ++r) {
    for (Index j = 0; j < block_length_; ++j) {
      order_.push_back(static_cast<std::size_t>(r * block_length_ + j));
    }
  }

  mixing_.resize(ell, ell);
  for (Index k = 0; k < ell; ++k) {
    for (Index r = 0; r < ell; ++r) {
      const double angle = -2.0 * std::numbers::pi * static_cast<double>(k * r) /
                           static_cast<double>(ell);
      mixing_(k, r) = std::polar(1.0, angle);
    }
  }

  full_masks_.clear();
  for (const auto& p : patterns) {
    CVec full = CVec::Ones(block_length_);
    const CVec mu = p.mask.values();
    for (std::size_t i = 0; i < positions.size(); ++i) {
      full[static_cast<Index>(positions[i])] = mu[static_cast<Index>(i)];
    }
    full_masks_.push_back(std::move(full));
  }
}

void ExtendedOp::build_random(std::uint64_t seed) {
  const Index n = base_.n();
  const Index N = base_.N();
  const Index extra = ntilde_ - n;
  constexpr int kAttempts = 3;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    const std::uint64_t s =
        attempt == 0 ? seed : derive_seed(seed, static_cast<std::uint64_t>(attempt));
    Rng rng(derive_seed(s, Stream::Complement));
    Eigen::MatrixXcd q(N, extra);
    bool ok = true;
    for (Index col = 0; col < extra && ok; ++col) {
      CVec v = complex_gaussian(N, rng);
      v -= base_.forward(base_.backward(v));
      const double reference = v.norm();
      for (int pass = 0; pass < 2; ++pass) {  // classical Gram-Schmidt, twice
        v -= base_.forward(base_.backward(v));
        if (col > 0) v -= q.leftCols(col) * (q.leftCols(col).adjoint() * v);
      }
      const double nv = v.norm();
      if (!(nv > 1e-8 * reference)) {
        ok = false;
        break;
      }
      q.col(col) = v / nv;
    }
    if (ok) {
      complement_ = std::move(q);
      seed_used_ = s;
      return;
    }
  }
  throw NumericalError("orthonormalization of the complement basis broke down after " +
                       std::to_string(kAttempts) + " seeds");
}

CVec ExtendedOp::forward(const CVec& x) const {
  if (x.size() != ntilde_) {
    throw ConfigError("extended forward: expected length " + std::to_string(ntilde_) +
                      ", got " + std::to_string(x.size()));
  }
  if (basis_ == ComplementBasis::SeededRandom) {
    CVec y = base_.forward(x.head(base_.n()));
    if (complement_.cols() > 0) y += complement_ * x.tail(complement_.cols());
    return y;
  }
  const Index ell = mixing_.rows();
  const Index L = block_length_;
  CVec cells = CVec::Zero(ell * L);
  Index used_blocks = 1;
  for (Index t = 0; t < ntilde_; ++t) {
    const auto cell = static_cast<Index>(order_[static_cast<std::size_t>(t)]);
    cells[cell] = x[t];
    used_blocks = std::max(used_blocks, cell / L + 1);
  }
  const double c = base_.normalization();
  CVec y(base_.N());
  for (Index k = 0; k < ell; ++k) {
    CVec mixed = CVec::Zero(L);
    for (Index r = 0; r < used_blocks; ++r) mixed += mixing_(k, r) * cells.segment(r * L, L);
    y.segment(k * L, L) = c * base_.dft(static_cast<std::size_t>(k))
                                  .forward_full(full_masks_[static_cast<std::size_t>(k)]
                                                    .cwiseProduct(mixed));
  }
  return y;
}

CVec ExtendedOp::backward(const CVec& y) const {
  if (y.size() != base_.N()) {
    throw ConfigError("extended backward: expected length " + std::to_string(base_.N()) +
                      ", got " + std::to_string(y.size()));
  }
  if (basis_ == ComplementBasis::SeededRandom) {
    CVec x(ntilde_);
    x.head(base_.n()) = base_.backward(y);
    if (complement_.cols() > 0) x.tail(complement_.cols()) = complement_.adjoint() * y;
    return x;
  }
  const Index ell = mixing_.rows();
  const Index L = block_length_;
  const double c = base_.normalization();
  Index used_blocks = 1;
  for (Index t = 0; t < ntilde_; ++t) {
    used_blocks = std::max(used_blocks,
                           static_cast<Index>(order_[static_cast<std::size_t>(t)]) / L + 1);
  }
  CVec cells = CVec::Zero(ell * L);
  for (Index k = 0; k < ell; ++k) {
    const CVec back = c * full_masks_[static_cast<std::size_t>(k)].conjugate().cwiseProduct(
                              base_.dft(static_cast<std::size_t>(k))
                                  .adjoint_full(y.segment(k * L, L)));
    for (Index r = 0; r < used_blocks; ++r) {
      cells.segment(r * L, L) += std::conj(mixing_(k, r)) * back;
    }
  }
  CVec x(ntilde_);
  for (Index t = 0; t < ntilde_; ++t) {
    x[t] = cells[static_cast<Index>(order_[static_cast<std::size_t>(t)])];
  }
  return x;
}

ExtendedOp extend_op(const PropagationOp& op, Index ntilde, ComplementBasis basis,
                     std::uint64_t seed) {
  return ExtendedOp(op, ntilde, basis, seed);
}

}  // namespace phasedr
