#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace phasedr {

/// Extents of a d-dimensional object support. Vectorization is row-major
/// (last axis fastest) everywhere in the library, including mask and image files.
class GridShape {
 public:
  GridShape() = default;
  explicit GridShape(std::vector<std::size_t> dims);

  /// Parses "RxC" (or "AxBxC..."). Throws ConfigError on malformed input.
  static GridShape parse(std::string_view text);

  std::size_t rank() const { return dims_.size(); }
  std::size_t extent(std::size_t axis) const { return dims_.at(axis); }
  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t size() const;

  /// The (2M_j + 1)-per-axis grid on which the diffraction pattern determines
  /// the autocorrelation. An extent of M_j + 1 maps to 2 M_j + 1.
  GridShape oversampled() const;

  std::string str() const;

  bool operator==(const GridShape&) const = default;

 private:
  std::vector<std::size_t> dims_;
};

/// Row-major flat positions of every cell of `inner` inside the larger grid
/// `outer` (inner anchored at the origin). Result has inner.size() entries.
std::vector<std::size_t> embedding_positions(const GridShape& inner, const GridShape& outer);

}  // namespace phasedr
