#include "phasedr/solver.hpp"

#include <cmath>
#include <limits>

#include "phasedr/errors.hpp"
#include "phasedr/rng.hpp"

namespace phasedr {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// One DR update together with the object estimate attached to the current
// iterate. Without a sector the estimate is [A y]_n (FDR) or [x]_n (ODR);
// with a sector it is the constrained reflection [A(2 P2 y - y)]_X, whose
// image A* x_hat equals P2 y at a fixed point.
struct Update {
  CVec next;
  CVec estimate;
};

Update fdr_update(const CVec& y, const PropagationOp& op, const RVec& b, const SectorSpec& s) {
  if (!all_finite(y)) throw NumericalError("non-finite iterate");
  const CVec p = proj_P2(y, b);
  const CVec constrained = sector_project(op.backward(2.0 * p - y), s);
  Update u;
  u.next = y + op.forward(constrained) - p;
  u.estimate = s.active ? constrained : op.backward(y);
  return u;
}

Update odr_update(const CVec& x, const ExtendedOp& ext, const RVec& b, const SectorSpec& s) {
  if (!all_finite(x)) throw NumericalError("non-finite iterate");
  const CVec q = ext.backward(proj_P2(ext.forward(x), b));
  const CVec constrained = constrain(2.0 * q - x, s, ext.n());
  Update u;
  u.next = x + constrained - q;
  u.estimate = s.active ? constrained.head(ext.n()) : x.head(ext.n());
  return u;
}

}  // namespace

InitSpec InitSpec::parse(const std::string& text, std::uint64_t seed) {
  if (text == "ri") return random(seed);
  if (text == "ci") return constant();
  if (text.starts_with("near:")) {
    try {
      std::size_t used = 0;
      const double delta = std::stod(text.substr(5), &used);
      if (used == text.size() - 5 && delta >= 0.0) return near_solution(delta, seed);
    } catch (const std::exception&) {
    }
  }
  throw ConfigError("unknown initialization '" + text + "' (expected ri, ci or near:<delta>)");
}

std::string InitSpec::str() const {
  switch (kind) {
    case Kind::Random: return "ri";
    case Kind::Constant: return "ci";
    case Kind::NearSolution: return "near:" + std::to_string(delta);
  }
  return "unknown";
}

PhaseAlignment align_phase(const CVec& x, const CVec& x0) {
  if (x.size() != x0.size()) throw ConfigError("align_phase: length mismatch");
  const Complex z = x.dot(x0);  // x^H x0
  PhaseAlignment a;
  a.alpha = std::abs(z) > 0.0 ? z / std::abs(z) : Complex(1.0, 0.0);
  a.error = (a.alpha * x - x0).norm();
  const double scale = x0.norm();
  a.relative_error = scale > 0.0 ? a.error / scale : kNaN;
  return a;
}

double estimate_rate(const std::vector<double>& errors, std::size_t window, double floor) {
  std::vector<double> kept;
  for (double e : errors) {
    if (std::isfinite(e) && e > floor) kept.push_back(e);
  }
  if (kept.size() < 2) return kNaN;
  const std::size_t m = std::min(window, kept.size());
  const double first = kept[kept.size() - m];
  const double last = kept.back();
  return std::pow(last / first, 1.0 / static_cast<double>(m - 1));
}

double fit_decay_rate(const std::vector<double>& errors, double floor) {
  std::vector<double> logs;
  for (double e : errors) {
    if (!std::isfinite(e) || e <= floor) break;
    logs.push_back(std::log(e));
  }
  const std::size_t m = logs.size();
  if (m < 2) return kNaN;
  const double kbar = 0.5 * static_cast<double>(m - 1);
  double ybar = 0.0;
  for (double y : logs) ybar += y;
  ybar /= static_cast<double>(m);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const double dk = static_cast<double>(k) - kbar;
    sxy += dk * (logs[k] - ybar);
    sxx += dk * dk;
  }
  return std::exp(sxy / sxx);
}

Index default_ntilde(const PropagationOp& op) { return op.pattern_length(0); }

RecoveryResult run_solver(const SolverConfig& cfg, const PropagationOp& op, const RVec& b,
                          const std::optional<CVec>& x0) {
  if (cfg.max_iters < 1) throw ConfigError("max-iters must be at least 1");
  if (!(cfg.tol > 0.0)) throw ConfigError("tol must be positive");
  if (b.size() != op.N()) throw ConfigError("data length does not match the operator");
  if (x0 && x0->size() != op.n()) throw ConfigError("ground truth length mismatch");
  if (cfg.init.kind == InitSpec::Kind::NearSolution && !x0) {
    throw ConfigError("near-solution initialization needs the ground truth object");
  }

  std::optional<ExtendedOp> ext;
  if (cfg.algorithm == Algorithm::ODR) {
    const Index ntilde = cfg.ntilde == 0 ? default_ntilde(op) : cfg.ntilde;
    ext.emplace(op, ntilde, cfg.complement, cfg.complement_seed);
  }

  // Starting point, first in the measurement domain.
  CVec start_obj;
  CVec start_meas;
  switch (cfg.init.kind) {
    case InitSpec::Kind::Random: {
      Rng rng(derive_seed(cfg.init.seed, Stream::Init));
      start_obj = complex_gaussian(op.n(), rng);
      break;
    }
    case InitSpec::Kind::Constant:
      start_obj = CVec::Ones(op.n());
      break;
    case InitSpec::Kind::NearSolution: {
      Rng rng(derive_seed(cfg.init.seed, Stream::Init));
      const CVec y0 = op.forward(*x0);
      CVec dir = complex_gaussian(op.N(), rng);
      dir /= dir.norm();
      start_meas = y0 + cfg.init.delta * y0.norm() * dir;
      break;
    }
  }
  CVec iterate;
  if (ext) {
    iterate = start_meas.size() > 0 ? ext->backward(start_meas) : embed(start_obj, ext->ntilde());
  } else {
    iterate = start_meas.size() > 0 ? start_meas : op.forward(start_obj);
  }

  RecoveryResult result;
  std::vector<double> errors;
  double residual = kNaN;
  CVec estimate;
  int k = 1;
  for (;;) {
    Update u;
    try {
      u = ext ? odr_update(iterate, *ext, b, cfg.sector) : fdr_update(iterate, op, b, cfg.sector);
    } catch (const NumericalError& e) {
      result.diagnostic = std::string("diverged at iteration ") + std::to_string(k) + ": " +
                          e.what();
      result.converged = false;
      break;
    }
    estimate = std::move(u.estimate);
    double err = kNaN;
    if (x0) err = align_phase(estimate, *x0).relative_error;
    result.history.push_back({k, err, residual});
    errors.push_back(err);

    if (x0 && err <= cfg.tol) {
      result.converged = true;
      break;
    }
    if (k > 1 && residual <= cfg.tol) {
      result.converged = true;
      break;
    }
    if (k >= cfg.max_iters) break;

    const double scale = iterate.norm();
    residual = scale > 0.0 ? (u.next - iterate).norm() / scale : (u.next - iterate).norm();
    iterate = std::move(u.next);
    ++k;
  }

  result.iterations = static_cast<int>(result.history.size());
  result.x_hat = estimate.size() > 0 ? sector_project(estimate, cfg.sector) : CVec::Zero(op.n());
  if (x0) {
    const auto a = align_phase(result.x_hat, *x0);
    result.aligned_error = a.error;
    result.relative_error = a.relative_error;
  } else {
    result.aligned_error = kNaN;
    result.relative_error = kNaN;
  }
  result.rate_estimate = estimate_rate(errors);
  if (result.diagnostic.empty() && !result.converged) {
    result.diagnostic = "iteration budget exhausted";
  }
  return result;
}

}  // namespace phasedr
