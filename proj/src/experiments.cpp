#include "phasedr/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "json.hpp"

#include "phasedr/csv.hpp"
#include "phasedr/data.hpp"
#include "phasedr/errors.hpp"

namespace phasedr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string algo_str(Algorithm a) { return a == Algorithm::FDR ? "fdr" : "odr"; }

SolverConfig trial_solver(const ExperimentConfig& cfg, int t, const InitSpec& init) {
  SolverConfig s = cfg.solver;
  s.init = init;
  s.init.seed = trial_seed(cfg, t);
  s.complement_seed = trial_seed(cfg, t);
  return s;
}

double median(std::vector<double> v) {
  if (v.empty()) return kNaN;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  if (v.size() % 2 == 1) return v[m];
  if (std::isinf(v[m - 1]) || std::isinf(v[m])) return v[m];
  return 0.5 * (v[m - 1] + v[m]);
}

double mean(const std::vector<double>& v) {
  if (v.empty()) return kNaN;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

std::vector<double> ranks(const std::vector<double>& v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return v[a] < v[b]; });
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
    i = j + 1;
  }
  return r;
}

void check_trials(const ExperimentConfig& cfg) {
  if (cfg.trials < 1) throw ConfigError("trials must be at least 1");
}

}  // namespace

double prob_lower_bound(std::int64_t n, std::int64_t S, double alpha, double beta) {
  if (S < 0) throw ConfigError("S must be nonnegative");
  if (!(alpha >= 0.0 && alpha <= 1.0 && beta >= 0.0 && beta <= 1.0)) {
    throw ConfigError("alpha and beta must lie in [0, 1]");
  }
  const double base = std::abs((beta + alpha) / 2.0);
  // std::pow(0, 0) is 1, which is the convention needed for S < 2.
  return 1.0 - static_cast<double>(n) * std::pow(base, static_cast<double>(S / 2));
}

std::string ExperimentConfig::describe() const {
  nlohmann::ordered_json j;
  j["experiment"] = experiment;
  j["image"] = {{"kind", image.kind_str()},
                {"shape", image.shape.str()},
                {"margin", image.margin},
                {"alpha", image.alpha},
                {"beta", image.beta}};
  j["variant"] = variant.str();
  j["trials"] = trials;
  j["seed"] = seed;
  j["solver"] = {{"algorithm", algo_str(solver.algorithm)},
                 {"ntilde", solver.ntilde},
                 {"max_iters", solver.max_iters},
                 {"tol", solver.tol},
                 {"init", solver.init.str()},
                 {"sector", solver.sector.active
                                ? nlohmann::ordered_json{solver.sector.alpha, solver.sector.beta}
                                : nlohmann::ordered_json(nullptr)},
                 {"complement", solver.complement == ComplementBasis::Structured
                                    ? "structured"
                                    : "seeded-random"}};
  if (experiment == "global") j["inits"] = inits;
  if (experiment == "local-rate") j["near_delta"] = near_delta;
  if (experiment == "noise-sweep") {
    j["nsr"] = nsr_grid;
    j["budgets"] = budgets;
  }
  if (experiment == "padding-sweep") {
    j["ntilde_ratios"] = ntilde_ratios;
    j["success_threshold"] = success_threshold;
  }
  return j.dump();
}

std::uint64_t trial_seed(const ExperimentConfig& cfg, int trial) {
  return cfg.seed + static_cast<std::uint64_t>(trial);
}

TrialInstance make_trial(const ExperimentConfig& cfg, int trial) {
  TestImage img = cfg.image;
  img.seed = trial_seed(cfg, trial);
  CVec x0 = gen_image(img);
  return {std::move(x0), PropagationOp(img.shape, cfg.variant, trial_seed(cfg, trial))};
}

int iterations_to(const RecoveryResult& r, double threshold) {
  for (const auto& h : r.history) {
    if (h.relative_error <= threshold) return h.k;
  }
  return -1;
}

SpectralCertResult run_spectral_cert(const ExperimentConfig& cfg, std::ostream* csv) {
  check_trials(cfg);
  SpectralCertResult out;
  if (csv) *csv << "# " << cfg.describe() << '\n' << spectral_csv_header() << '\n';
  for (int t = 0; t < cfg.trials; ++t) {
    const auto inst = make_trial(cfg, t);
    const auto pt = make_linearization(inst.op, inst.x0);
    const auto report = lambda2_power(pt, inst.op, 1e-10, 200'000, trial_seed(cfg, t));
    if (report.converged && report.lambda2 < 1.0 - 1e-6) ++out.certified;
    if (csv) *csv << spectral_csv_row(trial_seed(cfg, t), inst.op, report) << '\n';
    out.seeds.push_back(trial_seed(cfg, t));
    out.reports.push_back(report);
  }
  return out;
}

LocalRateResult run_local_rate(const ExperimentConfig& cfg, std::ostream* csv) {
  check_trials(cfg);
  CsvWriter w(csv, cfg.describe(), {"trial", "algo", "k", "error", "lambda2_ref"});
  LocalRateResult out;
  for (int t = 0; t < cfg.trials; ++t) {
    const auto inst = make_trial(cfg, t);
    const RVec b = synthesize_data(inst.op, inst.x0, 0.0, trial_seed(cfg, t)).b;
    LocalRateTrial tr;
    tr.trial = t;
    tr.spectral = lambda2_power(make_linearization(inst.op, inst.x0), inst.op, 1e-10, 200'000,
                                trial_seed(cfg, t));
    for (Algorithm a : {Algorithm::FDR, Algorithm::ODR}) {
      SolverConfig s = trial_solver(cfg, t, InitSpec::near_solution(cfg.near_delta, 0));
      s.algorithm = a;
      const auto r = run_solver(s, inst.op, b, inst.x0);
      for (const auto& h : r.history) {
        w.row({std::to_string(t), algo_str(a), std::to_string(h.k), fmt_double(h.relative_error),
               fmt_double(std::pow(tr.spectral.lambda2, h.k))});
      }
      const double first = r.history.front().relative_error;
      std::vector<double> errs;
      for (const auto& h : r.history) errs.push_back(h.relative_error);
      const double rate = fit_decay_rate(errs);
      if (a == Algorithm::FDR) {
        tr.rate_fdr = rate;
        tr.final_fdr = r.relative_error;
        tr.geometric = r.relative_error <= 1e-3 * first;
      } else {
        tr.rate_odr = rate;
        tr.final_odr = r.relative_error;
      }
    }
    out.trials.push_back(tr);
  }
  return out;
}

GlobalResult run_global(const ExperimentConfig& cfg, std::ostream* csv) {
  check_trials(cfg);
  if (cfg.inits.empty()) throw ConfigError("global: no initializations given");
  CsvWriter w(csv, cfg.describe(), {"trial", "init", "k", "relative_error"});
  GlobalResult out;
  for (const auto& init_text : cfg.inits) {
    const InitSpec init = InitSpec::parse(init_text, 0);
    GlobalInitSummary s;
    s.init = init_text;
    std::vector<double> visual;
    for (int t = 0; t < cfg.trials; ++t) {
      const auto inst = make_trial(cfg, t);
      const RVec b = synthesize_data(inst.op, inst.x0, 0.0, trial_seed(cfg, t)).b;
      const auto r = run_solver(trial_solver(cfg, t, init), inst.op, b, inst.x0);
      for (const auto& h : r.history) {
        w.row({std::to_string(t), init_text, std::to_string(h.k), fmt_double(h.relative_error)});
      }
      const int kv = iterations_to(r, kVisualThreshold);
      const int kn = iterations_to(r, kNumericalThreshold);
      s.final_errors.push_back(r.relative_error);
      s.iters_visual.push_back(kv);
      s.iters_numerical.push_back(kn);
      s.reached_visual += kv > 0;
      s.reached_numerical += kn > 0;
      visual.push_back(kv > 0 ? kv : kInf);
    }
    s.median_iters_visual = median(visual);
    out.per_init.push_back(std::move(s));
  }
  return out;
}

NoiseSweepResult run_noise_sweep(const ExperimentConfig& cfg, std::ostream* csv) {
  check_trials(cfg);
  if (cfg.nsr_grid.empty() || cfg.budgets.empty()) {
    throw ConfigError("noise-sweep: empty nsr grid or budget list");
  }
  for (double v : cfg.nsr_grid) {
    if (!(v >= 0.0 && v <= 0.5)) throw ConfigError("noise-sweep: nsr values must lie in [0, 0.5]");
  }
  for (int bgt : cfg.budgets) {
    if (bgt < 1) throw ConfigError("noise-sweep: budgets must be positive");
  }
  CsvWriter w(csv, cfg.describe(), {"nsr", "trial", "budget", "relative_error"});
  NoiseSweepResult out;
  out.nsr = cfg.nsr_grid;
  out.budgets = cfg.budgets;
  const int longest = *std::max_element(cfg.budgets.begin(), cfg.budgets.end());
  std::vector<std::vector<std::vector<double>>> errs(
      cfg.budgets.size(), std::vector<std::vector<double>>(cfg.nsr_grid.size()));
  for (std::size_t i = 0; i < cfg.nsr_grid.size(); ++i) {
    for (int t = 0; t < cfg.trials; ++t) {
      const auto inst = make_trial(cfg, t);
      const RVec b = synthesize_data(inst.op, inst.x0, cfg.nsr_grid[i], trial_seed(cfg, t)).b;
      SolverConfig s = trial_solver(cfg, t, cfg.solver.init);
      s.max_iters = longest;
      const auto r = run_solver(s, inst.op, b, inst.x0);
      // A run stopped early keeps its final value for every later budget.
      for (std::size_t bi = 0; bi < cfg.budgets.size(); ++bi) {
        const std::size_t at = std::min<std::size_t>(cfg.budgets[bi], r.history.size()) - 1;
        const double e = r.history[at].relative_error;
        errs[bi][i].push_back(e);
        w.row({fmt_double(cfg.nsr_grid[i]), std::to_string(t), std::to_string(cfg.budgets[bi]),
               fmt_double(e)});
      }
    }
  }
  out.errors = errs;
  for (std::size_t bi = 0; bi < cfg.budgets.size(); ++bi) {
    std::vector<double> m;
    for (const auto& e : errs[bi]) m.push_back(median(e));
    out.median_error.push_back(std::move(m));
  }

  for (std::size_t bi = 0; bi < cfg.budgets.size(); ++bi) {
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < cfg.nsr_grid.size(); ++i) {
      if (cfg.nsr_grid[i] <= 0.0 || cfg.nsr_grid[i] > 0.2) continue;
      xs.push_back(cfg.nsr_grid[i]);
      ys.push_back(out.median_error[bi][i]);
    }
    double slope = kNaN, intercept = kNaN;
    if (xs.size() >= 2) {
      const double mx = mean(xs), my = mean(ys);
      double sxy = 0.0, sxx = 0.0;
      for (std::size_t k = 0; k < xs.size(); ++k) {
        sxy += (xs[k] - mx) * (ys[k] - my);
        sxx += (xs[k] - mx) * (xs[k] - mx);
      }
      if (sxx > 0.0) {
        slope = sxy / sxx;
        intercept = my - slope * mx;
      }
    }
    out.slope.push_back(slope);
    out.intercept.push_back(intercept);
  }

  for (std::size_t b1 = 0; b1 < cfg.budgets.size(); ++b1) {
    for (std::size_t b2 = 0; b2 < cfg.budgets.size(); ++b2) {
      if (cfg.budgets[b2] != 2 * cfg.budgets[b1]) continue;
      for (std::size_t i = 0; i < cfg.nsr_grid.size(); ++i) {
        if (cfg.nsr_grid[i] <= 0.0 || cfg.nsr_grid[i] > 0.2) continue;
        const double e1 = out.median_error[b1][i], e2 = out.median_error[b2][i];
        out.doubling_change = std::max(out.doubling_change, std::abs(e2 - e1) / e1);
      }
    }
  }
  return out;
}

Index ntilde_for_ratio(const PropagationOp& op, double ratio) {
  if (!(ratio > 0.0) || !std::isfinite(ratio)) throw ConfigError("n~/n ratio must be positive");
  const double want = std::round(ratio * static_cast<double>(op.n()));
  return std::clamp<Index>(static_cast<Index>(want), op.n(), op.N());
}

PaddingSweepResult run_padding_sweep(const ExperimentConfig& cfg, std::ostream* csv) {
  check_trials(cfg);
  if (cfg.ntilde_ratios.empty()) throw ConfigError("padding-sweep: empty n~/n grid");
  CsvWriter w(csv, cfg.describe(), {"ratio", "ntilde", "trial", "relative_error", "iterations"});
  PaddingSweepResult out;
  for (double ratio : cfg.ntilde_ratios) {
    PaddingPoint p;
    p.ratio = ratio;
    int successes = 0;
    std::vector<double> iters;
    for (int t = 0; t < cfg.trials; ++t) {
      const auto inst = make_trial(cfg, t);
      const RVec b = synthesize_data(inst.op, inst.x0, 0.0, trial_seed(cfg, t)).b;
      p.ntilde = ntilde_for_ratio(inst.op, ratio);
      SolverConfig s = trial_solver(cfg, t, cfg.solver.init);
      // With n~ = N the extension is unitary and ODR is conjugate to FDR.
      s.algorithm = p.ntilde == inst.op.N() ? Algorithm::FDR : Algorithm::ODR;
      s.ntilde = p.ntilde;
      const auto r = run_solver(s, inst.op, b, inst.x0);
      p.errors.push_back(r.relative_error);
      p.iterations.push_back(r.iterations);
      iters.push_back(r.iterations);
      successes += r.relative_error <= cfg.success_threshold;
      w.row({fmt_double(ratio), std::to_string(p.ntilde), std::to_string(t),
             fmt_double(r.relative_error), std::to_string(r.iterations)});
    }
    p.mean_error = mean(p.errors);
    p.success_rate = static_cast<double>(successes) / cfg.trials;
    p.mean_iters = mean(iters);
    out.points.push_back(std::move(p));
  }
  std::vector<double> ratios, rates;
  for (const auto& p : out.points) {
    ratios.push_back(p.ratio);
    rates.push_back(p.success_rate);
  }
  out.spearman = spearman(ratios, rates);
  return out;
}

double spearman(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw ConfigError("spearman: length mismatch");
  if (a.size() < 2) return kNaN;
  const auto ra = ranks(a), rb = ranks(b);
  const double ma = mean(ra), mb = mean(rb);
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    sab += (ra[i] - ma) * (rb[i] - mb);
    saa += (ra[i] - ma) * (ra[i] - ma);
    sbb += (rb[i] - mb) * (rb[i] - mb);
  }
  if (saa == 0.0 || sbb == 0.0) return kNaN;
  return sab / std::sqrt(saa * sbb);
}

}  // namespace phasedr
