#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "phasedr/douglas_rachford.hpp"

namespace phasedr {

enum class Algorithm { FDR, ODR };

struct InitSpec {
  enum class Kind { Random, Constant, NearSolution };
  Kind kind = Kind::Random;
  double delta = 1e-3;      // NearSolution only: relative size of the perturbation
  std::uint64_t seed = 0;   // Random and NearSolution

  static InitSpec random(std::uint64_t seed) { return {Kind::Random, 0.0, seed}; }
  static InitSpec constant() { return {Kind::Constant, 0.0, 0}; }
  static InitSpec near_solution(double delta, std::uint64_t seed) {
    return {Kind::NearSolution, delta, seed};
  }
  /// "ri", "ci" or "near:<delta>".
  static InitSpec parse(const std::string& text, std::uint64_t seed);
  std::string str() const;
};

struct SolverConfig {
  Algorithm algorithm = Algorithm::FDR;
  Index ntilde = 0;  // ODR only; 0 means the standard padding (one frequency block)
  int max_iters = 2000;
  double tol = 1e-10;
  InitSpec init;
  SectorSpec sector;
  ComplementBasis complement = ComplementBasis::Structured;
  std::uint64_t complement_seed = 0;
};

struct HistoryEntry {
  int k = 0;
  double relative_error = 0.0;  // NaN without ground truth
  double residual = 0.0;        // ||iterate_k - iterate_{k-1}|| / ||iterate_{k-1}||, NaN at k = 1
};

struct RecoveryResult {
  CVec x_hat;
  double aligned_error = 0.0;   // min_{|alpha|=1} ||alpha x_hat - x0||
  double relative_error = 0.0;  // aligned_error / ||x0||
  int iterations = 0;
  bool converged = false;
  double rate_estimate = 0.0;   // NaN when fewer than two errors are above the floor
  std::vector<HistoryEntry> history;
  std::string diagnostic;
};

struct PhaseAlignment {
  Complex alpha{1.0, 0.0};
  double error = 0.0;
  double relative_error = 0.0;
};

/// Optimal global phase: alpha = z/|z| with z = <x, x0>, alpha = 1 when z = 0.
PhaseAlignment align_phase(const CVec& x, const CVec& x0);

/// Geometric-mean ratio over the last `window` errors above `floor`.
double estimate_rate(const std::vector<double>& errors, std::size_t window = 20,
                     double floor = 1e-12);

/// exp of the least-squares slope of log(error) against k over the errors
/// before the first one at or below `floor`. Averages over the oscillation
/// that rotating modes put on the decay. NaN with fewer than two points.
double fit_decay_rate(const std::vector<double>& errors, double floor = 1e-12);

/// Iterates FDR or ODR from the configured start. Stops on relative iterate
/// change <= tol, relative aligned error <= tol (when x0 is supplied) or after
/// max_iters states (the initial state counts as k = 1).
RecoveryResult run_solver(const SolverConfig& cfg, const PropagationOp& op, const RVec& b,
                          const std::optional<CVec>& x0 = std::nullopt);

/// The n~ used for ODR when cfg.ntilde == 0: the cells of one frequency block.
Index default_ntilde(const PropagationOp& op);

}  // namespace phasedr
