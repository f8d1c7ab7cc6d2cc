#include "etflab/cli.hpp"

#include <cmath>
#include <fstream>
#include <ostream>

#include <CLI11.hpp>
#include <fmt/core.h>

#include "etflab/energy.hpp"
#include "etflab/error.hpp"
#include "etflab/gegenbauer.hpp"
#include "etflab/optimize.hpp"
#include "etflab/serialize.hpp"
#include "etflab/sphere.hpp"
#include "etflab/uniformity.hpp"

namespace etflab::cli {

namespace {

constexpr std::size_t kGapRandomSamples = 10;

std::string num(double x) { return fmt::format("{:.17g}", x); }

std::string join(const std::vector<double>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + num(xs[i]);
  return s;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw ParameterError(fmt::format("cannot open output file '{}'", path));
  return f;
}

void write_json(const std::string& path, const Json& spec, Json body) {
  Json doc{{"spec", spec}};
  for (auto& [k, v] : body.items()) doc[k] = std::move(v);
  auto f = open_out(path);
  f << doc.dump(2) << '\n';
  if (!f) throw ParameterError(fmt::format("failed writing '{}'", path));
}

/// CSV with the resolved spec as a leading '#' comment line.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const Json& spec, const std::string& header) : path_(path), f_(open_out(path)) {
    f_ << "# etflab " << spec.dump() << '\n' << header << '\n';
  }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) f_ << (i ? "," : "") << cells[i];
    f_ << '\n';
  }
  void close() {
    f_.close();
    if (!f_) throw ParameterError(fmt::format("failed writing '{}'", path_));
  }

 private:
  std::string path_;
  std::ofstream f_;
};

struct OptimizeArgs {
  std::string objective = "sym-ce";
  std::size_t n = 0;
  std::size_t dim = 0;
  double alpha = 1.0;
  std::size_t restarts = 1;
  std::size_t max_iters = 20000;
  double step = 0.1;
  double grad_tol = 1e-10;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_optimize(const OptimizeArgs& a, std::ostream& out) {
  OptParams p;
  p.objective = parse_objective(a.objective);
  p.alpha = a.alpha;
  p.max_iters = a.max_iters;
  p.step_size = a.step;
  p.grad_tol = a.grad_tol;
  p.restarts = a.restarts;
  p.seed = a.seed;

  const Json spec{{"command", "optimize"}, {"objective", a.objective}, {"n", a.n},
                  {"dim", a.dim},          {"alpha", a.alpha},         {"restarts", a.restarts},
                  {"max_iters", a.max_iters}, {"step", a.step},        {"grad_tol", a.grad_tol},
                  {"seed", a.seed}};

  OptResult res = [&] {
    if (p.objective == Objective::AsymmetricCE) {
      PairConfiguration init(sample_uniform(a.n, a.dim, a.seed), sample_uniform(a.n, a.dim, derive_seed(a.seed, 1)));
      return minimize(init, p);
    }
    return minimize(sample_uniform(a.n, a.dim, a.seed), p);
  }();

  const Configuration& u = res.best_config();
  const bool feasible = u.n() <= u.m() + 1;
  Json diag{{"etf_feasible", feasible}, {"etf_distance", feasible ? Json(etf_distance(u)) : Json(nullptr)}};
  if (p.objective == Objective::SymmetricCE) diag["lower_bound"] = lower_bound_sym(u.n(), p.alpha);
  if (p.objective == Objective::AsymmetricCE) {
    const auto& pair = res.best_pair();
    double worst = 1.0;
    for (std::size_t i = 0; i < pair.n(); ++i) worst = std::min(worst, dot(pair.u().point(i), pair.v().point(i)));
    diag["min_uv_inner"] = worst;
  }
  if (p.objective == Objective::PairExp) diag["energy_gap"] = energy_gap(u, p.alpha);

  Json body = to_json(res);
  body["diagnostics"] = diag;
  write_json(a.out, spec, std::move(body));

  out << fmt::format("optimize {} n={} m={}: best_loss={} restart={} iters={} converged={} etf_distance={}\n",
                     a.objective, a.n, a.dim, num(res.best_loss), res.restart_index, res.iterations_used,
                     res.converged, feasible ? num(etf_distance(u)) : std::string("n/a (n > m+1)"));
  return kSuccess;
}

struct ReportArgs {
  std::string in;
  double alpha = 1.0;
  std::size_t lmax = 8;
  std::string out;
};

Configuration load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParameterError(fmt::format("cannot open input file '{}'", path));
  Json j;
  try {
    j = Json::parse(f);
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(fmt::format("'{}' is not valid JSON: {}", path, e.what()));
  }
  // Accept a bare configuration or an optimize result holding one.
  if (j.is_object() && !j.contains("points") && j.contains("config")) return config_from_json(j.at("config"));
  return config_from_json(j);
}

int cmd_report(const ReportArgs& a, std::ostream& out) {
  const Configuration c = load_config(a.in);
  const Json spec{{"command", "report"}, {"in", a.in}, {"alpha", a.alpha}, {"lmax", a.lmax}};
  const EnergyReport e = energy_report(c, a.alpha);
  const bool feasible = c.n() <= c.m() + 1;
  Json body{{"energy", to_json(e)},
            {"shifted_loss", shifted_loss(c, a.alpha)},
            {"taylor_order2", taylor_order2(c, a.alpha)},
            {"effective_energy", effective_energy(c, a.alpha)},
            {"etf_feasible", feasible},
            {"etf_distance", feasible ? Json(etf_distance(c)) : Json(nullptr)},
            {"uniformity", c.m() >= 3 ? to_json(uniformity_report(c, a.lmax)) : Json(nullptr)}};
  write_json(a.out, spec, std::move(body));
  out << fmt::format("report n={} m={} alpha={}: loss_sym={} lower_bound={} gap={}\n", c.n(), c.m(), num(a.alpha),
                     num(e.loss_sym), num(e.lower_bound), num(e.gap));
  return kSuccess;
}

struct GegenbauerArgs {
  int d = 2;
  double alpha = 1.0;
  std::size_t kmax = 40;
  std::string out;
};

int cmd_gegenbauer(const GegenbauerArgs& a, std::ostream& out) {
  const Json spec{{"command", "gegenbauer"}, {"d", a.d}, {"alpha", a.alpha}, {"kmax", a.kmax}};
  const GegenbauerSeries series(a.d, a.alpha, a.kmax);
  CsvWriter csv(a.out, spec, "k,b_k,log_inv_bk_over_klogk");
  for (std::size_t k = 0; k <= a.kmax; ++k) {
    const double kd = static_cast<double>(k);
    const double diag = k >= 2 ? -series.log_coeffs()[k] / (kd * std::log(kd)) : std::nan("");
    csv.row({std::to_string(k), num(series.coeffs()[k]), num(diag)});
  }
  csv.close();
  out << fmt::format("gegenbauer d={} alpha={}: {} coefficients, b_0={}\n", a.d, num(a.alpha), a.kmax + 1,
                     num(series.coeffs()[0]));
  return kSuccess;
}

struct GapSweepArgs {
  std::size_t dim = 3;
  double alpha = 1.0;
  std::vector<std::size_t> n_list;
  std::size_t restarts = 1;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_gap_sweep(const GapSweepArgs& a, std::ostream& out) {
  const Json spec{{"command", "gap-sweep"}, {"dim", a.dim},         {"alpha", a.alpha},
                  {"n_list", a.n_list},     {"restarts", a.restarts}, {"seed", a.seed},
                  {"random_samples", kGapRandomSamples}};
  if (a.n_list.empty()) throw ParameterError("--n-list must name at least one n");
  CsvWriter csv(a.out, spec, "n,gap_random_mean,gap_optimized");
  for (std::size_t n : a.n_list) {
    const std::uint64_t base = derive_seed(a.seed, n);
    double random_mean = 0.0;
    for (std::size_t s = 0; s < kGapRandomSamples; ++s)
      random_mean += energy_gap(sample_uniform(n, a.dim, derive_seed(base, s + 1)), a.alpha);
    random_mean /= static_cast<double>(kGapRandomSamples);

    OptParams p;
    p.objective = Objective::PairExp;
    p.alpha = a.alpha;
    p.restarts = a.restarts;
    p.seed = base;
    const OptResult res = minimize(sample_uniform(n, a.dim, base), p);
    const double gap = energy_gap(res.best_config(), a.alpha);
    csv.row({std::to_string(n), num(random_mean), num(gap)});
    out << fmt::format("gap-sweep n={}: random_mean={} optimized={}\n", n, num(random_mean), num(gap));
  }
  csv.close();
  return kSuccess;
}

struct TaylorArgs {
  std::size_t n = 4;
  std::size_t dim = 3;
  std::uint64_t seed = 0;
  std::vector<double> alphas;
  std::string out;
};

int cmd_taylor(const TaylorArgs& a, std::ostream& out) {
  const Json spec{{"command", "taylor-check"}, {"n", a.n}, {"dim", a.dim}, {"seed", a.seed}, {"alphas", a.alphas}};
  if (a.alphas.empty()) throw ParameterError("--alphas must name at least one value");
  const Configuration c = sample_uniform(a.n, a.dim, a.seed);
  CsvWriter csv(a.out, spec, "alpha,exact,taylor,abs_err");
  for (double alpha : a.alphas) {
    const double exact = shifted_loss(c, alpha);
    const double approx = taylor_order2(c, alpha);
    csv.row({num(alpha), num(exact), num(approx), num(std::abs(exact - approx))});
  }
  csv.close();
  out << fmt::format("taylor-check n={} m={}: {} alphas ({})\n", a.n, a.dim, a.alphas.size(), join(a.alphas));
  return kSuccess;
}

struct VmfArgs {
  double alpha = 1.0;
  std::vector<double> kappas;
  std::size_t nodes = 128;
  std::string out;
};

int cmd_vmf(const VmfArgs& a, std::ostream& out) {
  const Json spec{{"command", "vmf-check"}, {"alpha", a.alpha}, {"kappas", a.kappas}, {"nodes", a.nodes},
                  {"pole", {0.0, 0.0, 1.0}}};
  if (a.kappas.empty()) throw ParameterError("--kappas must name at least one value");
  CsvWriter csv(a.out, spec, "kappa,energy");
  std::vector<double> energies;
  for (double kappa : a.kappas) {
    energies.push_back(vmf_energy(kappa, a.alpha, {0.0, 0.0, 1.0}, a.nodes));
    csv.row({num(kappa), num(energies.back())});
  }
  csv.close();
  out << fmt::format("vmf-check alpha={}: energies {}\n", num(a.alpha), join(energies));
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"etflab: cross-entropy energies of points on hyperspheres", "etflab"};
  app.require_subcommand(1);

  OptimizeArgs opt;
  auto* optimize = app.add_subcommand("optimize", "Minimize sym-ce / asym-ce / pair-exp over unit vectors");
  optimize->add_option("--objective", opt.objective, "sym-ce | asym-ce | pair-exp")
      ->check(CLI::IsMember({"sym-ce", "asym-ce", "pair-exp"}))
      ->capture_default_str();
  optimize->add_option("--n", opt.n, "Number of points")->required();
  optimize->add_option("--dim", opt.dim, "Ambient dimension m")->required();
  optimize->add_option("--alpha", opt.alpha, "Scale parameter (ignored by asym-ce)")->capture_default_str();
  optimize->add_option("--restarts", opt.restarts)->capture_default_str();
  optimize->add_option("--max-iters", opt.max_iters)->capture_default_str();
  optimize->add_option("--step", opt.step, "Initial (and maximal) step size")->capture_default_str();
  optimize->add_option("--grad-tol", opt.grad_tol, "Riemannian gradient norm tolerance")->capture_default_str();
  optimize->add_option("--seed", opt.seed)->capture_default_str();
  optimize->add_option("--out", opt.out, "Output JSON")->required();

  ReportArgs rep;
  auto* report = app.add_subcommand("report", "Energy and uniformity report for a configuration file");
  report->add_option("--in", rep.in, "Configuration JSON (or optimize output)")->required();
  report->add_option("--alpha", rep.alpha)->capture_default_str();
  report->add_option("--lmax", rep.lmax, "Highest Gegenbauer moment")->capture_default_str();
  report->add_option("--out", rep.out)->required();

  GegenbauerArgs geg;
  auto* gegen = app.add_subcommand("gegenbauer", "Coefficient table b_k of exp(alpha t) on S^d");
  gegen->add_option("--d", geg.d, "Sphere S^d (ambient m = d+1)")->required();
  gegen->add_option("--alpha", geg.alpha)->required();
  gegen->add_option("--kmax", geg.kmax)->required();
  gegen->add_option("--out", geg.out)->required();

  GapSweepArgs gap;
  auto* sweep = app.add_subcommand("gap-sweep", "Energy gap of random vs pair-exp-optimized configurations");
  sweep->add_option("--dim", gap.dim)->required();
  sweep->add_option("--alpha", gap.alpha)->required();
  sweep->add_option("--n-list", gap.n_list, "Comma-separated point counts")->delimiter(',')->required();
  sweep->add_option("--restarts", gap.restarts)->capture_default_str();
  sweep->add_option("--seed", gap.seed)->capture_default_str();
  sweep->add_option("--out", gap.out)->required();

  TaylorArgs tay;
  auto* taylor = app.add_subcommand("taylor-check", "Second-order small-alpha expansion vs exact shifted loss");
  taylor->add_option("--n", tay.n)->required();
  taylor->add_option("--dim", tay.dim)->required();
  taylor->add_option("--seed", tay.seed)->capture_default_str();
  taylor->add_option("--alphas", tay.alphas, "Comma-separated alphas")->delimiter(',')->required();
  taylor->add_option("--out", tay.out)->required();

  VmfArgs vmf;
  auto* vmfc = app.add_subcommand("vmf-check", "Energy of von Mises-Fisher measures on S^2");
  vmfc->add_option("--alpha", vmf.alpha)->required();
  vmfc->add_option("--kappas", vmf.kappas, "Comma-separated concentrations")->delimiter(',')->required();
  vmfc->add_option("--nodes", vmf.nodes)->capture_default_str();
  vmfc->add_option("--out", vmf.out)->required();

  std::vector<const char*> cargv;
  cargv.reserve(argv.size());
  for (const auto& s : argv) cargv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(cargv.size()), cargv.data());
  } catch (const CLI::ParseError& e) {
    // Help requests print to `out` and succeed; real parse errors are usage errors.
    return app.exit(e, out, err) == 0 ? kSuccess : kUsageError;
  }

  try {
    if (optimize->parsed()) return cmd_optimize(opt, out);
    if (report->parsed()) return cmd_report(rep, out);
    if (gegen->parsed()) return cmd_gegenbauer(geg, out);
    if (sweep->parsed()) return cmd_gap_sweep(gap, out);
    if (taylor->parsed()) return cmd_taylor(tay, out);
    if (vmfc->parsed()) return cmd_vmf(vmf, out);
  } catch (const NumericError& e) {
    err << "etflab: numeric error: " << e.what() << '\n';
    return kNumericError;
  } catch (const ParameterError& e) {
    err << "etflab: " << e.what() << '\n';
    return kUsageError;
  }
  err << "etflab: no subcommand given\n";
  return kUsageError;
}

}  // namespace etflab::cli
