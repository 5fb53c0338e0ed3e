#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "phasedr/propagation.hpp"

namespace phasedr {

/// Linearization of FDR at the true solution y0 = A* x0.
struct LinearizationPoint {
  CVec x0;       // unit-norm copy of the object
  CVec y0;       // A* x0
  CVec omega0;   // y0 / |y0|, 1 where y0 vanishes
  RVec b;        // |y0|
  Index zero_magnitudes = 0;
};

LinearizationPoint make_linearization(const PropagationOp& op, const CVec& x0);

/// B v = A(omega0 (.) v), v in C^N.
CVec apply_B(const LinearizationPoint& pt, const PropagationOp& op, const CVec& v);
/// B* u = conj(omega0) (.) A* u, u in C^n.
CVec apply_Bstar(const LinearizationPoint& pt, const PropagationOp& op, const CVec& u);

/// Real form Bre = [Re B; Im B] in R^{2n x N}.
/// Bre^T u = Re(B* G^{-1}(u)) for u in R^{2n}.
RVec apply_realB_T(const LinearizationPoint& pt, const PropagationOp& op, const RVec& u);
/// Bre v = G(B v) for real v in R^N.
RVec apply_realB(const LinearizationPoint& pt, const PropagationOp& op, const RVec& v);

/// Jacobian of S_f at the solution, expressed in the rotated frame v = Omega0^* eta:
/// S_loc v = (I - B*B) Re v + i B*B Im v. Real-linear, not complex-linear.
CVec apply_Sloc(const LinearizationPoint& pt, const PropagationOp& op, const CVec& v);

struct SlocAtPoint {
  CVec value;
  bool zero_magnitude = false;  // phase convention used at some |y(j)| == 0
};

/// Jacobian at an arbitrary iterate y with data b, frame Omega = diag(y/|y|):
/// S_loc v = (I - B_y*B_y) v + i (2 B_y*B_y - I) diag(b/|y|) Im v, B_y = A Omega.
SlocAtPoint apply_Sloc_at(const PropagationOp& op, const CVec& y, const RVec& b, const CVec& v);

/// Full singular system of the dense real form (desk scale only).
struct SingularSystem {
  RVec values;       // 2n values, descending
  Eigen::MatrixXd U; // 2n x 2n left singular vectors
  Eigen::MatrixXd V; // N x 2n right singular vectors
};

/// Dense Bre assembled from unit-vector applications (2n x N).
Eigen::MatrixXd dense_realB(const LinearizationPoint& pt, const PropagationOp& op);

/// Throws ConfigError when 2n * N exceeds `max_entries`.
SingularSystem svd_oracle(const LinearizationPoint& pt, const PropagationOp& op,
                          Index max_entries = 1'000'000);

struct SpectralReport {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double lambda2n = 0.0;
  double residual = 0.0;
  double predicted_rate = 0.0;
  double pairing_defect = 0.0;  // |lambda2^2 + lambda_{2n-1}^2 - 1| when measured
  int power_iters = 0;
  bool converged = false;
};

/// Second singular value of Bre by power iteration on Bre Bre^T restricted to
/// the orthogonal complement of xi1 = G(x0)/||x0||. Converged when
/// ||Bre Bre^T u - lambda^2 u|| <= tol.
SpectralReport lambda2_power(const LinearizationPoint& pt, const PropagationOp& op,
                             double tol = 1e-10, int max_iters = 200'000,
                             std::uint64_t seed = 0);

struct GapDiagnostic {
  double im_norm = 0.0;        // ||Im(B* u)||
  double defect_max = 0.0;     // max_j |Re(a_j*u)Re(a_j*x0) + Im(a_j*u)Im(a_j*x0)|
  double defect_norm = 0.0;    // Euclidean norm of the same componentwise defects
};

/// ||Im(B* u)|| <= ||u||, with equality iff A*u/|A*u| = +-omega0 componentwise.
GapDiagnostic check_gap_condition(const LinearizationPoint& pt, const PropagationOp& op,
                                  const CVec& u);

/// CSV: seed,variant,n,N,lambda1,lambda2,lambda2n,residual,power_iters,predicted_rate
std::string spectral_csv_header();
std::string spectral_csv_row(std::uint64_t seed, const PropagationOp& op,
                             const SpectralReport& r);

}  // namespace phasedr
