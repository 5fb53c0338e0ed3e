#include "phasedr/projections.hpp"

#include <cmath>
#include <numbers>

#include "phasedr/errors.hpp"

namespace phasedr {

namespace {

constexpr double kPi = std::numbers::pi;

// Counter-clockwise angular distance from `from` to `to`, in [0, 2 pi).
double ccw_distance(double from, double to) {
  double d = std::fmod(to - from, 2.0 * kPi);
  if (d < 0.0) d += 2.0 * kPi;
  return d;
}

Complex onto_ray(Complex z, double angle) {
  const Complex dir = std::polar(1.0, angle);
  return (z * std::conj(dir)).real() * dir;
}

Complex project_one(Complex z, double lower, double upper) {
  if (z == Complex(0.0, 0.0)) return z;
  double theta = std::arg(z);
  if (theta <= -kPi) theta = kPi;  // principal value in (-pi, pi]
  if (theta >= lower && theta <= upper) return z;
  const double past_upper = ccw_distance(upper, theta);
  const double before_lower = ccw_distance(theta, lower);
  const bool near_upper = past_upper <= kPi / 2;
  const bool near_lower = before_lower <= kPi / 2;
  if (near_upper && (!near_lower || past_upper <= before_lower)) return onto_ray(z, upper);
  if (near_lower) return onto_ray(z, lower);
  return {0.0, 0.0};
}

}  // namespace

SectorSpec SectorSpec::make(double alpha, double beta) {
  if (!(alpha >= 0.0 && beta >= 0.0 && alpha <= 1.0 && beta <= 1.0)) {
    throw ConfigError("sector bounds must lie in [0, 1]");
  }
  if (alpha + beta > 1.0 + 1e-15) {
    throw ConfigError("sector [-alpha pi, beta pi] must be convex (alpha + beta <= 1)");
  }
  return {alpha, beta, true};
}

CVec sector_project(const CVec& x, const SectorSpec& s, Index n) {
  if (n < 0) n = x.size();
  if (n > x.size()) throw ConfigError("sector_project: n exceeds vector length");
  CVec out = CVec::Zero(x.size());
  if (!s.active) {
    out.head(n) = x.head(n);
    return out;
  }
  const double lower = -s.alpha * kPi;
  const double upper = s.beta * kPi;
  for (Index j = 0; j < n; ++j) out[j] = project_one(x[j], lower, upper);
  return out;
}

CVec constrain(const CVec& x, const SectorSpec& s, Index n) { return sector_project(x, s, n); }

CVec proj_P1(const CVec& y, const PropagationOp& op, const SectorSpec& s) {
  return op.forward(sector_project(op.backward(y), s));
}

CVec proj_P2(const CVec& y, const RVec& b) {
  if (y.size() != b.size()) throw ConfigError("proj_P2: length mismatch");
  return phase_factor(y).cwiseProduct(b.cast<Complex>());
}

}  // namespace phasedr
