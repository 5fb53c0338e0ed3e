#include "phasedr/linalg.hpp"

#include <cmath>

#include "phasedr/errors.hpp"

namespace phasedr {

RealPair realify(const CVec& v) { return {v.real(), v.imag()}; }

CVec unrealify(const RealPair& p) {
  if (p.re.size() != p.im.size()) {
    throw ConfigError("unrealify: real and imaginary blocks differ in length");
  }
  CVec v(p.re.size());
  v.real() = p.re;
  v.imag() = p.im;
  return v;
}

RVec realify_stacked(const CVec& v) {
  RVec g(2 * v.size());
  g.head(v.size()) = v.real();
  g.tail(v.size()) = v.imag();
  return g;
}

CVec unrealify_stacked(const RVec& g) {
  if (g.size() % 2 != 0) {
    throw ConfigError("unrealify_stacked: odd length");
  }
  const Index n = g.size() / 2;
  CVec v(n);
  v.real() = g.head(n);
  v.imag() = g.tail(n);
  return v;
}

double real_inner(const CVec& u, const CVec& v) {
  if (u.size() != v.size()) {
    throw ConfigError("real_inner: length mismatch");
  }
  return u.dot(v).real();  // Eigen's dot conjugates the first argument
}

CVec embed(const CVec& x, Index target) {
  if (target < x.size()) {
    throw ConfigError("embed: target length " + std::to_string(target) +
                      " is smaller than " + std::to_string(x.size()));
  }
  CVec out = CVec::Zero(target);
  out.head(x.size()) = x;
  return out;
}

CVec restrict_to(const CVec& x, Index n) {
  if (n < 0 || n > x.size()) {
    throw ConfigError("restrict_to: cannot take " + std::to_string(n) + " of " +
                      std::to_string(x.size()) + " coordinates");
  }
  return x.head(n);
}

CVec phase_factor(const CVec& y) {
  CVec w(y.size());
  for (Index j = 0; j < y.size(); ++j) {
    const double mag = std::abs(y[j]);
    w[j] = mag > 0.0 ? y[j] / mag : Complex(1.0, 0.0);
  }
  return w;
}

bool all_finite(const CVec& v) {
  for (Index j = 0; j < v.size(); ++j) {
    if (!std::isfinite(v[j].real()) || !std::isfinite(v[j].imag())) return false;
  }
  return true;
}

}  // namespace phasedr
