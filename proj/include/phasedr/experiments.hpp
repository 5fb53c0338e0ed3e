#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "phasedr/image.hpp"
#include "phasedr/solver.hpp"
#include "phasedr/spectral.hpp"

namespace phasedr {

inline constexpr double kVisualThreshold = 1e-4;
inline constexpr double kNumericalThreshold = 1e-8;

/// 1 - n |(beta + alpha)/2|^floor(S/2), with 0^0 = 1. May be negative.
double prob_lower_bound(std::int64_t n, std::int64_t S, double alpha, double beta);

struct ExperimentConfig {
  std::string experiment = "global";
  TestImage image;
  Variant variant = Variant::one_and_half();
  int trials = 1;
  std::uint64_t seed = 0;
  SolverConfig solver;
  std::vector<std::string> inits{"ri", "ci"};   // global
  double near_delta = 1e-3;                     // local-rate
  std::vector<double> nsr_grid{0.0, 0.01, 0.02, 0.05, 0.1, 0.2};
  std::vector<int> budgets{100, 200};           // noise-sweep
  std::vector<double> ntilde_ratios{4.0, 5.0, 6.0, 7.0, 8.0};  // padding-sweep, n~/n
  double success_threshold = kVisualThreshold;  // padding-sweep

  /// One-line JSON record of every field, for CSV comment lines.
  std::string describe() const;
};

/// Trial t uses seed base + t for the image, the masks, the start and the noise,
/// each through its own derived stream.
std::uint64_t trial_seed(const ExperimentConfig& cfg, int trial);

struct TrialInstance {
  CVec x0;
  PropagationOp op;
};
TrialInstance make_trial(const ExperimentConfig& cfg, int trial);

/// First k whose relative error is <= threshold, or -1.
int iterations_to(const RecoveryResult& r, double threshold);

// -- spectral certification --------------------------------------------------

struct SpectralCertResult {
  std::vector<std::uint64_t> seeds;
  std::vector<SpectralReport> reports;
  int certified = 0;  // lambda2 < 1 - 1e-6 with converged power iteration
};
SpectralCertResult run_spectral_cert(const ExperimentConfig& cfg, std::ostream* csv);

// -- local convergence -------------------------------------------------------

struct LocalRateTrial {
  int trial = 0;
  SpectralReport spectral;
  double rate_fdr = 0.0;
  double rate_odr = 0.0;
  double final_fdr = 0.0;
  double final_odr = 0.0;
  bool geometric = false;  // FDR decayed by at least three orders of magnitude
};
struct LocalRateResult {
  std::vector<LocalRateTrial> trials;
};
/// CSV columns: trial,algo,k,error,lambda2_ref (lambda2^k).
LocalRateResult run_local_rate(const ExperimentConfig& cfg, std::ostream* csv);

// -- global recovery ---------------------------------------------------------

struct GlobalInitSummary {
  std::string init;
  std::vector<double> final_errors;
  std::vector<int> iters_visual;     // -1 when never reached
  std::vector<int> iters_numerical;
  int reached_visual = 0;
  int reached_numerical = 0;
  /// Median of iters_visual with unreached trials counted as +infinity.
  double median_iters_visual = 0.0;
};
struct GlobalResult {
  std::vector<GlobalInitSummary> per_init;
};
/// CSV columns: trial,init,k,relative_error.
GlobalResult run_global(const ExperimentConfig& cfg, std::ostream* csv);

// -- noise robustness --------------------------------------------------------

struct NoiseSweepResult {
  std::vector<double> nsr;
  std::vector<int> budgets;
  /// errors[b][i]: final error of every trial at budgets[b] and nsr[i].
  std::vector<std::vector<std::vector<double>>> errors;
  /// median_error[b][i]: median over trials of errors[b][i].
  std::vector<std::vector<double>> median_error;
  /// Least-squares line through (nsr, median error) for 0 < nsr <= 0.2, per budget.
  std::vector<double> slope;
  std::vector<double> intercept;
  /// Largest |e(2B) - e(B)| / e(B) of the medians over 0 < nsr <= 0.2 and
  /// every budget pair B, 2B present in the list. Zero when there is none.
  double doubling_change = 0.0;
};
/// CSV columns: nsr,trial,budget,relative_error.
NoiseSweepResult run_noise_sweep(const ExperimentConfig& cfg, std::ostream* csv);

// -- padding transition ------------------------------------------------------

/// n~ for a nominal ratio n~/n: round(ratio * n) clamped to [n, N].
Index ntilde_for_ratio(const PropagationOp& op, double ratio);

struct PaddingPoint {
  double ratio = 0.0;
  Index ntilde = 0;
  std::vector<double> errors;
  std::vector<int> iterations;
  double mean_error = 0.0;
  double success_rate = 0.0;
  double mean_iters = 0.0;
};
struct PaddingSweepResult {
  std::vector<PaddingPoint> points;
  double spearman = 0.0;  // rank correlation of success rate with the ratio
};
/// ODR from the configured start at each n~; n~ = N runs FDR, which it equals.
/// CSV columns: ratio,ntilde,trial,relative_error,iterations.
PaddingSweepResult run_padding_sweep(const ExperimentConfig& cfg, std::ostream* csv);

/// Spearman rank correlation with average ranks for ties; NaN when either
/// sequence is constant.
double spearman(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace phasedr
