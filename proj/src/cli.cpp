#include "phasedr/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "phasedr/csv.hpp"
#include "phasedr/errors.hpp"
#include "phasedr/experiments.hpp"

namespace phasedr {

namespace {

struct Options {
  std::string shape = "16x16";
  std::string variant = "one-and-half";
  std::string sector;
  std::string init;
  std::string nsr;
  std::string ntilde;
  std::string budgets;
  int trials = 1;
  std::uint64_t seed = 0;
  int max_iters = 2000;
  double tol = 1e-10;
  std::string out;
  std::string image = "rpp";
  int margin = -1;
  std::string algo = "fdr";
  std::string complement = "structured";
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

double to_double(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size() && std::isfinite(v)) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError("bad number '" + text + "' in " + what);
}

std::vector<double> double_list(const std::string& text, const std::string& what) {
  std::vector<double> v;
  for (const auto& p : split(text, ',')) v.push_back(to_double(p, what));
  if (v.empty()) throw ConfigError(what + " list is empty");
  return v;
}

ExperimentConfig build_config(const Options& o, const std::string& experiment) {
  ExperimentConfig c;
  c.experiment = experiment;
  c.image = TestImage::parse_kind(o.image);
  c.image.shape = GridShape::parse(o.shape);
  c.image.margin = o.margin >= 0 ? static_cast<std::size_t>(o.margin) : default_margin(c.image.shape);
  c.variant = Variant::parse(o.variant);
  c.trials = o.trials;
  c.seed = o.seed;
  if (o.trials < 1) throw ConfigError("--trials must be at least 1");

  SolverConfig& s = c.solver;
  s.max_iters = o.max_iters;
  s.tol = o.tol;
  if (o.algo == "fdr") {
    s.algorithm = Algorithm::FDR;
  } else if (o.algo == "odr") {
    s.algorithm = Algorithm::ODR;
  } else {
    throw ConfigError("--algo must be fdr or odr");
  }
  if (o.complement == "structured") {
    s.complement = ComplementBasis::Structured;
  } else if (o.complement == "random") {
    s.complement = ComplementBasis::SeededRandom;
  } else {
    throw ConfigError("--complement must be structured or random");
  }
  if (!o.sector.empty()) {
    const auto ab = double_list(o.sector, "--sector");
    if (ab.size() != 2) throw ConfigError("--sector expects two numbers a,b");
    s.sector = SectorSpec::make(ab[0], ab[1]);
    c.image.alpha = ab[0];
    c.image.beta = ab[1];
  }
  if (!o.init.empty()) {
    c.inits = split(o.init, ',');
    if (c.inits.empty()) throw ConfigError("--init is empty");
    for (const auto& i : c.inits) InitSpec::parse(i, 0);
    s.init = InitSpec::parse(c.inits.front(), 0);
  }
  if (!o.nsr.empty()) c.nsr_grid = double_list(o.nsr, "--nsr");
  if (!o.budgets.empty()) {
    c.budgets.clear();
    for (double b : double_list(o.budgets, "--budgets")) {
      if (b < 1 || b != std::floor(b)) throw ConfigError("--budgets must be positive integers");
      c.budgets.push_back(static_cast<int>(b));
    }
  }
  if (!o.ntilde.empty()) {
    const auto v = double_list(o.ntilde, "--ntilde");
    if (experiment == "padding-sweep") {
      c.ntilde_ratios = v;
    } else {
      if (v.size() != 1 || v[0] < 1 || v[0] != std::floor(v[0])) {
        throw ConfigError("--ntilde expects one integer outside padding-sweep");
      }
      s.ntilde = static_cast<Index>(v[0]);
    }
  }
  return c;
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--shape", o.shape, "object extents RxC")->capture_default_str();
  sub->add_option("--variant", o.variant, "one-mask, one-and-half, two-mask or multi:L")
      ->capture_default_str();
  sub->add_option("--sector", o.sector, "phase sector a,b meaning [-a pi, b pi]");
  sub->add_option("--image", o.image, "rpp, tcb or file:<prefix>")->capture_default_str();
  sub->add_option("--margin", o.margin, "zero frame width (default: extent/8)");
  sub->add_option("--trials", o.trials, "number of trials")->capture_default_str();
  sub->add_option("--seed", o.seed, "base seed; trial t uses seed + t")->capture_default_str();
  sub->add_option("--out", o.out, "output path (CSV; prefix for gen-image)");
}

void add_solver(CLI::App* sub, Options& o) {
  sub->add_option("--init", o.init, "ri, ci or near:<delta> (comma list for global)");
  sub->add_option("--max-iters", o.max_iters, "iteration budget")->capture_default_str();
  sub->add_option("--tol", o.tol, "stopping tolerance")->capture_default_str();
  sub->add_option("--algo", o.algo, "fdr or odr")->capture_default_str();
  sub->add_option("--ntilde", o.ntilde, "ODR n~ (padding-sweep: list of n~/n ratios)");
  sub->add_option("--complement", o.complement, "structured or random")->capture_default_str();
}

std::string fmt_int_or_inf(double v) {
  return std::isinf(v) ? "none" : fmt_double(v);
}

// Runs one subcommand; CSV goes to --out when given, else to `out`.
int dispatch(const std::string& name, const Options& o, std::ostream& out, std::ostream& err) {
  ExperimentConfig cfg = build_config(o, name);
  std::unique_ptr<std::ofstream> file;
  std::ostream* csv = &out;
  std::ostream* summary = &err;
  if (!o.out.empty() && name != "gen-image") {
    file = std::make_unique<std::ofstream>(o.out);
    if (!*file) throw ConfigError("cannot write " + o.out);
    csv = file.get();
    summary = &out;
  }

  if (name == "gen-image") {
    if (o.out.empty()) throw ConfigError("gen-image needs --out <prefix>");
    cfg.image.seed = cfg.seed;
    const CVec x = gen_image(cfg.image);
    write_image_pgm(o.out, x, cfg.image.shape);
    out << "gen-image " << cfg.image.kind_str() << ' ' << cfg.image.shape.str()
        << " margin=" << cfg.image.margin << " norm=" << fmt_double(x.norm())
        << " support-rank=" << support_rank(x, cfg.image.shape) << " -> " << o.out
        << ".{re,im}.pgm\n";
    return 0;
  }
  if (name == "spectral-cert") {
    const auto r = run_spectral_cert(cfg, csv);
    double worst = 0.0;
    bool all_converged = true;
    for (const auto& rep : r.reports) {
      worst = std::max(worst, rep.lambda2);
      all_converged = all_converged && rep.converged;
    }
    *summary << "spectral-cert certified=" << r.certified << '/' << cfg.trials
             << " max-lambda2=" << fmt_double(worst) << '\n';
    return all_converged ? 0 : 3;
  }
  if (name == "local-rate") {
    if (o.init.empty()) cfg.near_delta = 1e-3;
    else if (cfg.solver.init.kind == InitSpec::Kind::NearSolution) cfg.near_delta = cfg.solver.init.delta;
    else throw ConfigError("local-rate starts near the solution; use --init near:<delta>");
    const auto r = run_local_rate(cfg, csv);
    int geometric = 0, within = 0;
    for (const auto& t : r.trials) {
      geometric += t.geometric;
      within += t.geometric && t.rate_fdr <= t.spectral.lambda2 + 0.02;
    }
    *summary << "local-rate geometric=" << geometric << '/' << cfg.trials
             << " rate<=lambda2+0.02: " << within << '/' << geometric << '\n';
    return 0;
  }
  if (name == "global") {
    const auto r = run_global(cfg, csv);
    *summary << "global";
    for (const auto& s : r.per_init) {
      *summary << ' ' << s.init << ": 1e-4 " << s.reached_visual << '/' << cfg.trials
               << ", 1e-8 " << s.reached_numerical << '/' << cfg.trials
               << ", median-iters-1e-4 " << fmt_int_or_inf(s.median_iters_visual) << ';';
    }
    *summary << '\n';
    return 0;
  }
  if (name == "noise-sweep") {
    const auto r = run_noise_sweep(cfg, csv);
    *summary << "noise-sweep";
    for (std::size_t b = 0; b < r.budgets.size(); ++b) {
      *summary << " slope@" << r.budgets[b] << '=' << fmt_double(r.slope[b]);
    }
    *summary << " doubling-change=" << fmt_double(r.doubling_change) << '\n';
    return 0;
  }
  if (name == "padding-sweep") {
    const auto r = run_padding_sweep(cfg, csv);
    *summary << "padding-sweep";
    for (const auto& p : r.points) {
      *summary << " [" << fmt_double(p.ratio) << ": n~=" << p.ntilde
               << " mean=" << fmt_double(p.mean_error) << " success=" << fmt_double(p.success_rate)
               << ']';
    }
    *summary << " spearman=" << fmt_double(r.spearman) << '\n';
    return 0;
  }
  throw ConfigError("unknown subcommand " + name);
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Douglas-Rachford phase retrieval experiments", "phasedr"};
  app.require_subcommand(0, 1);
  Options o;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"gen-image", "write a test image as a PGM pair"},
      {"spectral-cert", "certify the spectral gap lambda2 < 1"},
      {"local-rate", "local convergence against lambda2^k"},
      {"global", "global recovery from random or constant starts"},
      {"noise-sweep", "final error against noise level"},
      {"padding-sweep", "ODR error against n~/n"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_common(sub, o);
    if (name != "gen-image") add_solver(sub, o);
    if (name == "noise-sweep") {
      sub->add_option("--nsr", o.nsr, "comma list of noise-to-signal ratios");
      sub->add_option("--budgets", o.budgets, "comma list of iteration budgets");
    }
  }

  if (args.empty()) {
    err << app.help();
    return 2;
  }
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    const auto subs = app.get_subcommands();
    out << (subs.empty() ? app.help() : subs.front()->help());
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  const auto chosen = app.get_subcommands();
  if (chosen.empty()) {
    err << app.help();
    return 2;
  }
  try {
    return dispatch(chosen.front()->get_name(), o, out, err);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace phasedr
