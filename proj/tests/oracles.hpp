#pragma once

// Brute-force reference implementations used only by the tests. Everything
// here is built from the defining formulas, never from the library's FFT path.

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "phasedr/grid.hpp"
#include "phasedr/linalg.hpp"
#include "phasedr/propagation.hpp"
#include "phasedr/rng.hpp"

namespace oracle {

using phasedr::CVec;
using phasedr::Complex;
using phasedr::GridShape;
using phasedr::Index;
using Mat = Eigen::MatrixXcd;

inline std::vector<std::size_t> coords(std::size_t flat, const GridShape& s) {
  std::vector<std::size_t> c(s.rank());
  for (std::size_t a = s.rank(); a-- > 0;) {
    c[a] = flat % s.extent(a);
    flat /= s.extent(a);
  }
  return c;
}

/// Matrix of the unnormalized DFT from the object grid to `freq` (direct double sum).
inline Mat dft_matrix(const GridShape& obj, const GridShape& freq) {
  Mat F(static_cast<Index>(freq.size()), static_cast<Index>(obj.size()));
  for (std::size_t w = 0; w < freq.size(); ++w) {
    const auto wc = coords(w, freq);
    for (std::size_t m = 0; m < obj.size(); ++m) {
      const auto mc = coords(m, obj);
      double phase = 0.0;
      for (std::size_t a = 0; a < obj.rank(); ++a) {
        phase += static_cast<double>(mc[a] * wc[a]) / static_cast<double>(freq.extent(a));
      }
      F(static_cast<Index>(w), static_cast<Index>(m)) =
          std::polar(1.0, -2.0 * std::numbers::pi * phase);
    }
  }
  return F;
}

inline CVec naive_dft(const CVec& x, const GridShape& obj) {
  return dft_matrix(obj, obj.oversampled()) * x;
}

/// Dense A* assembled block by block from the masks and the DFT formula, with
/// c fixed by the block sizes alone.
inline Mat dense_Astar(const phasedr::PropagationOp& op) {
  const auto& shape = op.shape();
  std::vector<Mat> blocks;
  Index rows = 0;
  for (const auto& p : op.patterns()) {
    const GridShape freq = p.oversampled ? shape.oversampled() : shape;
    blocks.push_back(dft_matrix(shape, freq) * p.mask.values().asDiagonal());
    rows += blocks.back().rows();
  }
  Mat A(rows, op.n());
  Index r = 0;
  for (const auto& b : blocks) {
    A.middleRows(r, b.rows()) = b;
    r += b.rows();
  }
  return A / std::sqrt(static_cast<double>(rows));
}

/// Columns of a linear map obtained from unit vectors.
inline Mat from_apply(const std::function<CVec(const CVec&)>& f, Index in) {
  Mat M;
  for (Index j = 0; j < in; ++j) {
    CVec e = CVec::Zero(in);
    e[j] = 1.0;
    const CVec col = f(e);
    if (j == 0) M.resize(col.size(), in);
    M.col(j) = col;
  }
  return M;
}

inline CVec random_cvec(Index n, std::uint64_t seed) {
  phasedr::Rng rng(seed);
  return phasedr::complex_gaussian(n, rng);
}

inline double max_abs(const CVec& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace oracle
