#include "phasedr/spectral.hpp"

#include <cmath>
#include <sstream>
#include <iomanip>

#include "phasedr/errors.hpp"
#include "phasedr/rng.hpp"

namespace phasedr {

LinearizationPoint make_linearization(const PropagationOp& op, const CVec& x0) {
  if (x0.size() != op.n()) throw ConfigError("linearization: object length mismatch");
  const double norm = x0.norm();
  if (!(norm > 0.0)) throw ConfigError("linearization: object must be nonzero");
  LinearizationPoint pt;
  pt.x0 = x0 / norm;
  pt.y0 = op.forward(pt.x0);
  pt.omega0 = phase_factor(pt.y0);
  pt.b = pt.y0.cwiseAbs();
  pt.zero_magnitudes = (pt.b.array() == 0.0).count();
  return pt;
}

CVec apply_B(const LinearizationPoint& pt, const PropagationOp& op, const CVec& v) {
  if (v.size() != op.N()) throw ConfigError("apply_B: expected length N");
  return op.backward(pt.omega0.cwiseProduct(v));
}

CVec apply_Bstar(const LinearizationPoint& pt, const PropagationOp& op, const CVec& u) {
  if (u.size() != op.n()) throw ConfigError("apply_Bstar: expected length n");
  return pt.omega0.conjugate().cwiseProduct(op.forward(u));
}

RVec apply_realB_T(const LinearizationPoint& pt, const PropagationOp& op, const RVec& u) {
  if (u.size() != 2 * op.n()) throw ConfigError("apply_realB_T: expected length 2n");
  return apply_Bstar(pt, op, unrealify_stacked(u)).real();
}

RVec apply_realB(const LinearizationPoint& pt, const PropagationOp& op, const RVec& v) {
  if (v.size() != op.N()) throw ConfigError("apply_realB: expected length N");
  return realify_stacked(apply_B(pt, op, v.cast<Complex>()));
}

CVec apply_Sloc(const LinearizationPoint& pt, const PropagationOp& op, const CVec& v) {
  if (v.size() != op.N()) throw ConfigError("apply_Sloc: expected length N");
  const CVec re = v.real().cast<Complex>();
  const CVec im = v.imag().cast<Complex>();
  const CVec bbre = apply_Bstar(pt, op, apply_B(pt, op, re));
  const CVec bbim = apply_Bstar(pt, op, apply_B(pt, op, im));
  return (re - bbre) + Complex(0.0, 1.0) * bbim;
}

SlocAtPoint apply_Sloc_at(const PropagationOp& op, const CVec& y, const RVec& b, const CVec& v) {
  if (y.size() != op.N() || b.size() != op.N() || v.size() != op.N()) {
    throw ConfigError("apply_Sloc_at: expected length N inputs");
  }
  SlocAtPoint out;
  const CVec omega = phase_factor(y);
  RVec ratio(y.size());
  for (Index j = 0; j < y.size(); ++j) {
    const double mag = std::abs(y[j]);
    if (mag > 0.0) {
      ratio[j] = b[j] / mag;
    } else {
      ratio[j] = 1.0;
      out.zero_magnitude = true;
    }
  }
  auto bstar_b = [&](const CVec& w) -> CVec {
    return omega.conjugate().cwiseProduct(op.forward(op.backward(omega.cwiseProduct(w))));
  };
  const CVec scaled_im = ratio.cwiseProduct(v.imag()).cast<Complex>();
  out.value = (v - bstar_b(v)) + Complex(0.0, 1.0) * (2.0 * bstar_b(scaled_im) - scaled_im);
  return out;
}

Eigen::MatrixXd dense_realB(const LinearizationPoint& pt, const PropagationOp& op) {
  const Index n = op.n();
  const Index N = op.N();
  // Rows of B are conjugated rows of B* = Omega0^* A*, built one column of A* at a time.
  Eigen::MatrixXcd B(n, N);
  for (Index i = 0; i < n; ++i) {
    CVec e = CVec::Zero(n);
    e[i] = 1.0;
    B.row(i) = apply_Bstar(pt, op, e).conjugate().transpose();
  }
  Eigen::MatrixXd real_form(2 * n, N);
  real_form.topRows(n) = B.real();
  real_form.bottomRows(n) = B.imag();
  return real_form;
}

SingularSystem svd_oracle(const LinearizationPoint& pt, const PropagationOp& op,
                          Index max_entries) {
  const Index entries = 2 * op.n() * op.N();
  if (entries > max_entries) {
    throw ConfigError("svd_oracle: dense real form has " + std::to_string(entries) +
                      " entries, above the guard of " + std::to_string(max_entries));
  }
  const Eigen::MatrixXd real_form = dense_realB(pt, op);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(real_form, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SingularSystem s;
  s.values = svd.singularValues();
  s.U = svd.matrixU();
  s.V = svd.matrixV();
  return s;
}

SpectralReport lambda2_power(const LinearizationPoint& pt, const PropagationOp& op, double tol,
                             int max_iters, std::uint64_t seed) {
  const RVec xi1 = realify_stacked(pt.x0);
  const RVec xi2n = realify_stacked(Complex(0.0, -1.0) * pt.x0);
  auto deflate = [&](RVec& u) { u -= xi1.dot(u) * xi1; };
  auto gram = [&](const RVec& u) { return apply_realB(pt, op, apply_realB_T(pt, op, u)); };

  SpectralReport r;
  r.lambda1 = apply_realB_T(pt, op, xi1).norm();
  r.lambda2n = apply_realB_T(pt, op, xi2n).norm();

  Rng rng(derive_seed(seed, Stream::Probe));
  RVec u = real_gaussian(2 * op.n(), rng);
  deflate(u);
  u.normalize();
  double rayleigh = 0.0;
  for (int it = 1; it <= max_iters; ++it) {
    RVec w = gram(u);
    deflate(w);
    rayleigh = u.dot(w);
    r.residual = (w - rayleigh * u).norm();
    r.power_iters = it;
    if (r.residual <= tol) {
      r.converged = true;
      break;
    }
    const double nw = w.norm();
    if (!(nw > 0.0)) throw NumericalError("lambda2_power: iterate collapsed to zero");
    u = w / nw;
  }
  r.lambda2 = std::sqrt(std::max(rayleigh, 0.0));
  r.predicted_rate = r.lambda2;
  // The partner direction G(-i G^{-1}(u)) carries lambda_{2n-1}; check the pairing.
  const RVec partner = realify_stacked(Complex(0.0, -1.0) * unrealify_stacked(u));
  const double partner_sq = apply_realB_T(pt, op, partner).squaredNorm();
  r.pairing_defect = std::abs(rayleigh + partner_sq - 1.0);
  return r;
}

GapDiagnostic check_gap_condition(const LinearizationPoint& pt, const PropagationOp& op,
                                  const CVec& u) {
  GapDiagnostic d;
  d.im_norm = apply_Bstar(pt, op, u).imag().norm();
  const CVec au = op.forward(u);
  double sq = 0.0;
  for (Index j = 0; j < au.size(); ++j) {
    const double defect = std::abs(au[j].real() * pt.y0[j].real() + au[j].imag() * pt.y0[j].imag());
    d.defect_max = std::max(d.defect_max, defect);
    sq += defect * defect;
  }
  d.defect_norm = std::sqrt(sq);
  return d;
}

std::string spectral_csv_header() {
  return "seed,variant,n,N,lambda1,lambda2,lambda2n,residual,power_iters,predicted_rate";
}

std::string spectral_csv_row(std::uint64_t seed, const PropagationOp& op,
                             const SpectralReport& r) {
  std::ostringstream os;
  os << std::setprecision(12) << seed << ',' << op.variant().str() << ',' << op.n() << ','
     << op.N() << ',' << r.lambda1 << ',' << r.lambda2 << ',' << r.lambda2n << ','
     << r.residual << ',' << r.power_iters << ',' << r.predicted_rate;
  return os.str();
}

}  // namespace phasedr
