#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "phasedr/dft.hpp"
#include "phasedr/grid.hpp"
#include "phasedr/linalg.hpp"
#include "phasedr/mask.hpp"

namespace phasedr {

enum class VariantKind { OneMask, OneAndHalf, TwoMask, MultiMask };

/// Measurement scheme. OneMask, OneAndHalf and TwoMask use oversampled
/// patterns; MultiMask stacks `patterns` unoversampled patterns, the last of
/// which is plain when `with_plain` is set.
struct Variant {
  VariantKind kind = VariantKind::OneAndHalf;
  int patterns = 2;
  bool with_plain = true;

  static Variant one_mask() { return {VariantKind::OneMask, 1, false}; }
  static Variant one_and_half() { return {VariantKind::OneAndHalf, 2, true}; }
  static Variant two_mask() { return {VariantKind::TwoMask, 2, false}; }
  static Variant multi_mask(int patterns, bool with_plain = true);

  /// Accepts one-mask, one-and-half, two-mask, multi:L.
  static Variant parse(std::string_view text);
  std::string str() const;

  bool operator==(const Variant&) const = default;
};

struct Pattern {
  MaskSpec mask;
  bool oversampled = true;
};

/// The isometric propagation matrix A* = c [Phi_k diag(mu_k)]_k, applied
/// matrix-free. Immutable after construction; copies share FFT plans.
class PropagationOp {
 public:
  /// Draws coded masks from `seed` (mask k uses a stream derived from seed and k).
  PropagationOp(GridShape shape, Variant variant, std::uint64_t seed);
  /// Uses caller-supplied masks for the coded patterns, in order.
  PropagationOp(GridShape shape, Variant variant, const std::vector<MaskSpec>& coded_masks);

  const GridShape& shape() const { return shape_; }
  const Variant& variant() const { return variant_; }
  const std::vector<Pattern>& patterns() const { return patterns_; }
  const GridDft& dft(std::size_t pattern) const;

  Index n() const { return static_cast<Index>(shape_.size()); }
  Index N() const { return total_length_; }
  Index pattern_length(std::size_t pattern) const;
  Index pattern_offset(std::size_t pattern) const { return offsets_.at(pattern); }
  double normalization() const { return c_; }

  /// x -> A* x (object to measurement space).
  CVec forward(const CVec& x) const;
  /// y -> A y (adjoint; A A* = I).
  CVec backward(const CVec& y) const;

 private:
  void build(const std::vector<MaskSpec>& coded_masks);
  void verify_isometry() const;

  GridShape shape_;
  Variant variant_;
  std::vector<Pattern> patterns_;
  std::vector<CVec> mask_values_;
  std::vector<Index> offsets_;
  std::vector<GridDft> dfts_;  // one per pattern, sharing plans when shapes agree
  Index total_length_ = 0;
  double c_ = 1.0;
};

inline CVec apply_Astar(const PropagationOp& op, const CVec& x) { return op.forward(x); }
inline CVec apply_A(const PropagationOp& op, const CVec& y) { return op.backward(y); }

/// Number of coded (random) masks a variant draws.
int coded_mask_count(const Variant& v);

}  // namespace phasedr
