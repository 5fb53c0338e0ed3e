#include "phasedr/mask.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <numbers>
#include <ostream>
#include <string>

#include "phasedr/errors.hpp"
#include "phasedr/rng.hpp"

namespace phasedr {

CVec MaskSpec::values() const {
  CVec mu(phases.size());
  for (Index j = 0; j < phases.size(); ++j) mu[j] = std::polar(1.0, phases[j]);
  return mu;
}

MaskSpec make_mask(const GridShape& shape, MaskKind kind, std::uint64_t seed) {
  MaskSpec mask;
  mask.kind = kind;
  mask.seed = seed;
  mask.phases = RVec::Zero(static_cast<Index>(shape.size()));
  if (kind == MaskKind::UniformCircle) {
    Rng rng(seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    for (Index j = 0; j < mask.phases.size(); ++j) mask.phases[j] = angle(rng);
  }
  return mask;
}

void write_mask(std::ostream& os, const MaskSpec& mask) {
  os << "PHASES " << mask.phases.size() << '\n' << std::setprecision(17);
  for (Index j = 0; j < mask.phases.size(); ++j) os << mask.phases[j] << '\n';
}

MaskSpec read_mask(std::istream& is) {
  std::string tag;
  Index n = -1;
  if (!(is >> tag >> n) || tag != "PHASES" || n < 0) {
    throw ConfigError("mask file: expected header 'PHASES n'");
  }
  MaskSpec mask;
  mask.kind = MaskKind::UniformCircle;
  mask.phases.resize(n);
  for (Index j = 0; j < n; ++j) {
    if (!(is >> mask.phases[j]) || !std::isfinite(mask.phases[j])) {
      throw ConfigError("mask file: expected " + std::to_string(n) + " finite phases");
    }
  }
  bool all_zero = (mask.phases.array() == 0.0).all();
  if (all_zero) mask.kind = MaskKind::Identity;
  return mask;
}

}  // namespace phasedr
