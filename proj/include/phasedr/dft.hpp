#pragma once

#include <memory>
#include <vector>

#include "phasedr/grid.hpp"
#include "phasedr/linalg.hpp"

namespace phasedr {

/// Unnormalized DFT of an object grid zero-padded onto a (possibly larger)
/// frequency grid: (Phi x)(k) = sum_m x(m) exp(-2 pi i sum_j m_j k_j / L_j).
/// Plans are built once and shared between copies; apply calls are const
/// and may run concurrently.
class GridDft {
 public:
  GridDft(GridShape object, GridShape frequency);

  const GridShape& object_shape() const { return object_; }
  const GridShape& frequency_shape() const { return frequency_; }
  Index object_size() const { return static_cast<Index>(object_.size()); }
  Index frequency_size() const { return static_cast<Index>(frequency_.size()); }

  /// Flat frequency-grid index of each object cell.
  const std::vector<std::size_t>& positions() const { return positions_; }

  /// Phi x for x on the object grid.
  CVec forward(const CVec& x) const;
  /// Phi^* y restricted to the object grid.
  CVec adjoint(const CVec& y) const;

  /// Full square DFT / inverse-sign DFT on the frequency grid (both unnormalized).
  CVec forward_full(const CVec& z) const;
  CVec adjoint_full(const CVec& y) const;

 private:
  struct Plans;
  GridShape object_;
  GridShape frequency_;
  std::vector<std::size_t> positions_;
  std::shared_ptr<const Plans> plans_;
};

enum class DftScaling { Raw, Isometric };

/// Phi x on the oversampled grid of `shape`. With Isometric scaling the result
/// is multiplied by c = 1/sqrt(n~), which makes the map an isometry on C^n.
CVec dft_oversampled(const CVec& x, const GridShape& shape,
                     DftScaling scaling = DftScaling::Isometric);
/// Adjoint of dft_oversampled under the same scaling.
CVec idft_oversampled(const CVec& y, const GridShape& shape,
                      DftScaling scaling = DftScaling::Isometric);

}  // namespace phasedr
