#include "etflab/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <optional>

#include <fmt/core.h>

#include "etflab/error.hpp"
#include "etflab/kernels.hpp"

namespace etflab {

std::string_view to_string(Objective objective) noexcept {
  switch (objective) {
    case Objective::SymmetricCE:
      return "sym-ce";
    case Objective::AsymmetricCE:
      return "asym-ce";
    case Objective::PairExp:
      return "pair-exp";
  }
  return "unknown";
}

Objective parse_objective(std::string_view name) {
  if (name == "sym-ce") return Objective::SymmetricCE;
  if (name == "asym-ce") return Objective::AsymmetricCE;
  if (name == "pair-exp") return Objective::PairExp;
  throw ParameterError(fmt::format("unknown objective '{}' (expected sym-ce, asym-ce or pair-exp)", name));
}

const Configuration& OptResult::best_config() const {
  if (const auto* c = std::get_if<Configuration>(&best)) return *c;
  return std::get<PairConfiguration>(best).u();
}

const PairConfiguration& OptResult::best_pair() const {
  if (const auto* p = std::get_if<PairConfiguration>(&best)) return *p;
  throw ParameterError("result holds a single configuration, not a pair");
}

std::vector<double> grad_sym(const Configuration& config, double alpha) {
  if (!(alpha > 0.0)) throw ParameterError(fmt::format("grad_sym needs alpha > 0, got {}", alpha));
  std::vector<double> g(config.n() * config.m());
  kernels::parallel::sym_ce(config, alpha, g);
  return g;
}

std::vector<double> grad_asym(const PairConfiguration& pair) {
  const std::size_t size = pair.n() * pair.m();
  std::vector<double> g(2 * size);
  kernels::parallel::asym_ce(pair.u(), pair.v(), std::span(g).first(size), std::span(g).last(size));
  return g;
}

std::vector<double> grad_pair_exp(const Configuration& config, double alpha) {
  if (!(alpha > 0.0)) throw ParameterError(fmt::format("grad_pair_exp needs alpha > 0, got {}", alpha));
  std::vector<double> g(config.n() * config.m());
  kernels::parallel::pair_exp_sum(config, alpha, 0.0, g);
  const double n2 = static_cast<double>(config.n()) * static_cast<double>(config.n());
  for (double& x : g) x /= n2;
  return g;
}

namespace {

void project_rows(std::span<const double> points, std::size_t m, std::span<double> g) {
  const std::size_t rows = points.size() / m;
  for (std::size_t k = 0; k < rows; ++k) {
    const double* u = points.data() + k * m;
    double* gk = g.data() + k * m;
    double c = 0.0;
    for (std::size_t j = 0; j < m; ++j) c += gk[j] * u[j];
    for (std::size_t j = 0; j < m; ++j) gk[j] -= c * u[j];
  }
}

}  // namespace

std::vector<double> tangent_project(const Configuration& config, std::span<const double> ambient_grad) {
  if (ambient_grad.size() != config.n() * config.m())
    throw ParameterError(fmt::format("gradient has {} entries, expected {}", ambient_grad.size(),
                                     config.n() * config.m()));
  std::vector<double> g(ambient_grad.begin(), ambient_grad.end());
  project_rows(config.data(), config.m(), g);
  return g;
}

namespace {

void check_fd_step(double h) {
  if (!(h >= 1e-8 && h <= 1e-3)) throw ParameterError(fmt::format("finite-difference step {} outside [1e-8, 1e-3]", h));
}

template <class F>
std::vector<double> central_differences(std::vector<double> x, double h, F&& f) {
  std::vector<double> g(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double x0 = x[k];
    x[k] = x0 + h;
    const double fp = f(x);
    x[k] = x0 - h;
    const double fm = f(x);
    x[k] = x0;
    g[k] = (fp - fm) / (2.0 * h);
  }
  return g;
}

}  // namespace

std::vector<double> finite_diff_grad(const Configuration& config, double alpha, double h) {
  check_fd_step(h);
  const std::size_t n = config.n();
  const std::size_t m = config.m();
  std::vector<double> x(config.data().begin(), config.data().end());
  return central_differences(std::move(x), h, [&](const std::vector<double>& y) {
    return kernels::serial::sym_ce(kernels::PointsView(y, n, m), alpha, {});
  });
}

std::vector<double> finite_diff_grad_asym(const PairConfiguration& pair, double h) {
  check_fd_step(h);
  const std::size_t n = pair.n();
  const std::size_t m = pair.m();
  std::vector<double> x(pair.u().data().begin(), pair.u().data().end());
  x.insert(x.end(), pair.v().data().begin(), pair.v().data().end());
  return central_differences(std::move(x), h, [&](const std::vector<double>& y) {
    const std::span<const double> all(y);
    return kernels::serial::asym_ce(kernels::PointsView(all.first(n * m), n, m),
                                    kernels::PointsView(all.last(n * m), n, m), {}, {});
  });
}

namespace {

/// Points being optimized: n rows (or 2n rows, u then v, for asym-ce) of dimension m.
struct Problem {
  Objective objective;
  double alpha;
  std::size_t n;
  std::size_t m;

  std::size_t rows() const { return objective == Objective::AsymmetricCE ? 2 * n : n; }

  /// Internal objective value and ambient gradient.
  double evaluate(std::span<const double> x, std::span<double> grad) const {
    switch (objective) {
      case Objective::SymmetricCE:
        return kernels::parallel::sym_ce(kernels::PointsView(x, n, m), alpha, grad);
      case Objective::PairExp: {
        // n * pair_exp_mean: per-point gradients stay O(1) as n grows.
        const double nd = static_cast<double>(n);
        const double s = kernels::parallel::pair_exp_sum(kernels::PointsView(x, n, m), alpha, 0.0, grad);
        for (double& g : grad) g /= nd;
        return s / nd;
      }
      case Objective::AsymmetricCE:
        return kernels::parallel::asym_ce(kernels::PointsView(x.first(n * m), n, m),
                                          kernels::PointsView(x.last(n * m), n, m), grad.first(n * m),
                                          grad.last(n * m));
    }
    return 0.0;
  }

  /// Value reported to callers (pair-exp is reported as pair_exp_mean).
  double reported(double internal) const {
    return objective == Objective::PairExp ? internal / static_cast<double>(n) : internal;
  }
};

struct RunOutcome {
  std::vector<double> x;
  double loss = 0.0;  // reported units
  double grad_norm = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  std::vector<TracePoint> trace;
};

double norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

void retract(std::span<const double> x, std::span<const double> g, double step, std::size_t m,
             std::span<double> out) {
  const std::size_t rows = x.size() / m;
  for (std::size_t k = 0; k < rows; ++k) {
    double r = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const double y = x[k * m + j] - step * g[k * m + j];
      out[k * m + j] = y;
      r += y * y;
    }
    r = std::sqrt(r);
    for (std::size_t j = 0; j < m; ++j) out[k * m + j] /= r;
  }
}

RunOutcome descend(const Problem& prob, std::vector<double> x, const OptParams& params) {
  constexpr double min_step = 1e-16;
  const std::size_t m = prob.m;
  std::vector<double> g(x.size());
  std::vector<double> trial(x.size());
  std::vector<double> trial_g(x.size());

  double loss = prob.evaluate(x, g);
  project_rows(x, m, g);
  double gn = norm(g);

  RunOutcome out;
  out.trace.push_back({0, prob.reported(loss)});
  double step = params.step_size;
  for (std::size_t iter = 1; iter <= params.max_iters && gn > params.grad_tol; ++iter) {
    bool accepted = false;
    double trial_loss = 0.0;
    double trial_gn = 0.0;
    while (step >= min_step) {
      retract(x, g, step, m, trial);
      trial_loss = prob.evaluate(trial, trial_g);
      project_rows(trial, m, trial_g);
      trial_gn = norm(trial_g);
      // Below rounding level the loss cannot resolve progress; accept a flat
      // step when the gradient shrinks.
      const double slack = 1e-14 * std::max(1.0, std::abs(loss));
      if (trial_loss < loss || (trial_loss <= loss + slack && trial_gn < gn)) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
    x.swap(trial);
    g.swap(trial_g);
    loss = trial_loss;
    gn = trial_gn;
    out.iterations = iter;
    out.trace.push_back({iter, prob.reported(loss)});
    step = std::min(step * 1.5, params.step_size);
  }
  out.x = std::move(x);
  out.loss = prob.reported(loss);
  out.grad_norm = gn;
  out.converged = gn <= params.grad_tol;
  return out;
}

void validate(const OptParams& p) {
  if (p.max_iters < 1) throw ParameterError("max_iters must be >= 1");
  if (p.restarts < 1) throw ParameterError("restarts must be >= 1");
  if (!(p.step_size > 0.0) || !std::isfinite(p.step_size)) throw ParameterError("step_size must be > 0");
  if (!(p.grad_tol > 0.0)) throw ParameterError("grad_tol must be > 0");
  if (p.objective != Objective::AsymmetricCE && !(p.alpha > 0.0 && std::isfinite(p.alpha)))
    throw ParameterError(fmt::format("alpha must be > 0 for {}, got {}", to_string(p.objective), p.alpha));
}

/// Starting point of restart r as a flat row block.
std::vector<double> restart_start(const Problem& prob, const std::vector<double>& init, std::size_t r,
                                  std::uint64_t seed) {
  if (r == 0) return init;
  if (prob.objective != Objective::AsymmetricCE) {
    const auto c = sample_uniform(prob.n, prob.m, derive_seed(seed, r));
    return {c.data().begin(), c.data().end()};
  }
  const auto u = sample_uniform(prob.n, prob.m, derive_seed(seed, 2 * r));
  const auto v = sample_uniform(prob.n, prob.m, derive_seed(seed, 2 * r + 1));
  std::vector<double> x(u.data().begin(), u.data().end());
  x.insert(x.end(), v.data().begin(), v.data().end());
  return x;
}

/// Restarts run across threads when each run is too small for the row-parallel kernels to pay off.
bool parallel_restarts(const Problem& prob, std::size_t restarts) { return restarts > 1 && prob.rows() <= 64; }

std::pair<RunOutcome, std::size_t> run_restarts(const Problem& prob, const std::vector<double>& init,
                                                const OptParams& params) {
  const long long count = static_cast<long long>(params.restarts);
  std::vector<std::optional<RunOutcome>> outcomes(params.restarts);
  std::vector<std::exception_ptr> errors(params.restarts);
#pragma omp parallel for schedule(dynamic) if (parallel_restarts(prob, params.restarts))
  for (long long r = 0; r < count; ++r) {
    try {
      outcomes[r] = descend(prob, restart_start(prob, init, static_cast<std::size_t>(r), params.seed), params);
    } catch (...) {
      errors[r] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::size_t best = 0;
  for (std::size_t r = 1; r < outcomes.size(); ++r)
    if (outcomes[r]->loss < outcomes[best]->loss) best = r;
  return {std::move(*outcomes[best]), best};
}

OptResult package(const Problem& prob, RunOutcome run, std::size_t restart, std::variant<Configuration, PairConfiguration> best) {
  OptResult res{prob.objective, prob.alpha, std::move(best), run.loss, run.grad_norm, run.iterations, restart,
                run.converged, std::move(run.trace)};
  return res;
}

}  // namespace

OptResult minimize(const Configuration& init, const OptParams& params) {
  validate(params);
  if (params.objective == Objective::AsymmetricCE)
    throw ParameterError("asym-ce needs a PairConfiguration starting point");
  const Problem prob{params.objective, params.alpha, init.n(), init.m()};
  auto [run, restart] = run_restarts(prob, {init.data().begin(), init.data().end()}, params);
  auto best = Configuration::from_directions(prob.n, prob.m, run.x);
  return package(prob, std::move(run), restart, std::move(best));
}

OptResult minimize(const PairConfiguration& init, const OptParams& params) {
  validate(params);
  if (params.objective != Objective::AsymmetricCE)
    throw ParameterError(fmt::format("{} optimizes a single configuration, not a pair", to_string(params.objective)));
  const Problem prob{params.objective, params.alpha, init.n(), init.m()};
  std::vector<double> x(init.u().data().begin(), init.u().data().end());
  x.insert(x.end(), init.v().data().begin(), init.v().data().end());
  auto [run, restart] = run_restarts(prob, x, params);
  const std::size_t size = prob.n * prob.m;
  PairConfiguration best(
      Configuration::from_directions(prob.n, prob.m, {run.x.begin(), run.x.begin() + static_cast<long>(size)}),
      Configuration::from_directions(prob.n, prob.m, {run.x.begin() + static_cast<long>(size), run.x.end()}));
  return package(prob, std::move(run), restart, std::move(best));
}

}  // namespace etflab
