#include "phasedr/propagation.hpp"

#include <charconv>
#include <cmath>

#include "phasedr/errors.hpp"
#include "phasedr/rng.hpp"

namespace phasedr {

Variant Variant::multi_mask(int patterns, bool with_plain) {
  if (patterns < 2) throw ConfigError("multi-mask variant needs at least 2 patterns");
  return {VariantKind::MultiMask, patterns, with_plain};
}

Variant Variant::parse(std::string_view text) {
  if (text == "one-mask") return one_mask();
  if (text == "one-and-half") return one_and_half();
  if (text == "two-mask") return two_mask();
  if (text.starts_with("multi:")) {
    auto digits = text.substr(6);
    int count = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), count);
    if (ec == std::errc{} && ptr == digits.data() + digits.size()) return multi_mask(count);
  }
  throw ConfigError("unknown variant '" + std::string(text) +
                    "' (expected one-mask, one-and-half, two-mask or multi:L)");
}

std::string Variant::str() const {
  switch (kind) {
    case VariantKind::OneMask: return "one-mask";
    case VariantKind::OneAndHalf: return "one-and-half";
    case VariantKind::TwoMask: return "two-mask";
    case VariantKind::MultiMask:
      return "multi:" + std::to_string(patterns) + (with_plain ? "" : "-coded");
  }
  return "unknown";
}

int coded_mask_count(const Variant& v) {
  switch (v.kind) {
    case VariantKind::OneMask: return 1;
    case VariantKind::OneAndHalf: return 1;
    case VariantKind::TwoMask: return 2;
    case VariantKind::MultiMask: return v.with_plain ? v.patterns - 1 : v.patterns;
  }
  return 0;
}

namespace {

std::vector<MaskSpec> draw_masks(const GridShape& shape, const Variant& v, std::uint64_t seed) {
  std::vector<MaskSpec> masks;
  const std::uint64_t base = derive_seed(seed, Stream::Mask);
  for (int k = 0; k < coded_mask_count(v); ++k) {
    masks.push_back(make_mask(shape, MaskKind::UniformCircle,
                              derive_seed(base, static_cast<std::uint64_t>(k))));
  }
  return masks;
}

}  // namespace

PropagationOp::PropagationOp(GridShape shape, Variant variant, std::uint64_t seed)
    : shape_(std::move(shape)), variant_(variant) {
  build(draw_masks(shape_, variant_, seed));
}

PropagationOp::PropagationOp(GridShape shape, Variant variant,
                             const std::vector<MaskSpec>& coded_masks)
    : shape_(std::move(shape)), variant_(variant) {
  build(coded_masks);
}

void PropagationOp::build(const std::vector<MaskSpec>& coded_masks) {
  const int coded = coded_mask_count(variant_);
  if (static_cast<int>(coded_masks.size()) != coded) {
    throw ConfigError("variant " + variant_.str() + " needs " + std::to_string(coded) +
                      " coded masks, got " + std::to_string(coded_masks.size()));
  }
  for (const auto& m : coded_masks) {
    if (m.phases.size() != n()) {
      throw ConfigError("mask length " + std::to_string(m.phases.size()) +
                        " does not match object size " + std::to_string(n()));
    }
  }
  const bool oversampled = variant_.kind != VariantKind::MultiMask;
  const int total = variant_.kind == VariantKind::OneMask ? 1 : variant_.patterns;

  GridDft dft(shape_, oversampled ? shape_.oversampled() : shape_);
  Index offset = 0;
  for (int k = 0; k < total; ++k) {
    Pattern p;
    p.mask = k < coded ? coded_masks[static_cast<std::size_t>(k)]
                       : make_mask(shape_, MaskKind::Identity, 0);
    p.oversampled = oversampled;
    patterns_.push_back(p);
    mask_values_.push_back(p.mask.values());
    dfts_.push_back(dft);
    offsets_.push_back(offset);
    offset += dft.frequency_size();
  }
  total_length_ = offset;
  // Each Phi_k satisfies Phi_k^* Phi_k = L_k I, so one global constant
  // c = 1/sqrt(sum_k L_k) makes the stack isometric.
  c_ = 1.0 / std::sqrt(static_cast<double>(total_length_));
  verify_isometry();
}

void PropagationOp::verify_isometry() const {
  Rng rng(derive_seed(0x5eed, Stream::Probe));
  const CVec x = complex_gaussian(n(), rng);
  const CVec back = backward(forward(x));
  const double defect = (back - x).norm() / x.norm();
  if (!(defect <= 1e-10)) {
    throw NumericalError("propagation operator is not isometric (defect " +
                         std::to_string(defect) + ")");
  }
}

const GridDft& PropagationOp::dft(std::size_t pattern) const { return dfts_.at(pattern); }

Index PropagationOp::pattern_length(std::size_t pattern) const {
  return dfts_.at(pattern).frequency_size();
}

CVec PropagationOp::forward(const CVec& x) const {
  if (x.size() != n()) {
    throw ConfigError("apply_Astar: expected length " + std::to_string(n()) + ", got " +
                      std::to_string(x.size()));
  }
  CVec y(N());
  for (std::size_t k = 0; k < patterns_.size(); ++k) {
    const CVec masked = mask_values_[k].cwiseProduct(x);
    y.segment(offsets_[k], pattern_length(k)) = c_ * dfts_[k].forward(masked);
  }
  return y;
}

CVec PropagationOp::backward(const CVec& y) const {
  if (y.size() != N()) {
    throw ConfigError("apply_A: expected length " + std::to_string(N()) + ", got " +
                      std::to_string(y.size()));
  }
  CVec x = CVec::Zero(n());
  for (std::size_t k = 0; k < patterns_.size(); ++k) {
    const CVec block = y.segment(offsets_[k], pattern_length(k));
    x += mask_values_[k].conjugate().cwiseProduct(dfts_[k].adjoint(block));
  }
  return c_ * x;
}

}  // namespace phasedr
