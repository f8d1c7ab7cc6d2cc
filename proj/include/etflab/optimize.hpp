#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "etflab/sphere.hpp"

namespace etflab {

enum class Objective { SymmetricCE, AsymmetricCE, PairExp };

/// "sym-ce", "asym-ce", "pair-exp".
std::string_view to_string(Objective objective) noexcept;
Objective parse_objective(std::string_view name);

struct OptParams {
  Objective objective = Objective::SymmetricCE;
  double alpha = 1.0;  ///< ignored for AsymmetricCE
  std::size_t max_iters = 20000;
  double step_size = 0.1;  ///< initial and maximal step
  double grad_tol = 1e-10;  ///< on the Riemannian gradient norm
  std::size_t restarts = 1;
  std::uint64_t seed = 0;
};

struct TracePoint {
  std::size_t iteration;
  double loss;
};

struct OptResult {
  Objective objective;
  double alpha;
  std::variant<Configuration, PairConfiguration> best;
  double best_loss;
  double grad_norm_final;
  std::size_t iterations_used;
  std::size_t restart_index;
  bool converged;
  /// Loss after every accepted iteration of the winning restart (entry 0 is the start).
  std::vector<TracePoint> trace;

  const Configuration& best_config() const;
  const PairConfiguration& best_pair() const;
};

/// Ambient gradient of loss_sym, n x m row-major. Throws ParameterError unless alpha > 0.
std::vector<double> grad_sym(const Configuration& config, double alpha);

/// Ambient gradients of loss_asym: first n rows for u, next n rows for v.
std::vector<double> grad_asym(const PairConfiguration& pair);

/// Ambient gradient of pair_exp_mean.
std::vector<double> grad_pair_exp(const Configuration& config, double alpha);

/// Row k becomes g_k - <g_k, u_k> u_k.
std::vector<double> tangent_project(const Configuration& config, std::span<const double> ambient_grad);

/// Central differences of loss_sym along every ambient coordinate
/// (without renormalizing). h must lie in [1e-8, 1e-3].
std::vector<double> finite_diff_grad(const Configuration& config, double alpha, double h);

/// Same for loss_asym; u rows first, then v rows.
std::vector<double> finite_diff_grad_asym(const PairConfiguration& pair, double h);

/// Riemannian gradient descent on the product of unit spheres:
/// step along the projected gradient, retract by renormalizing every point,
/// backtrack (halve) until the loss decreases, grow the step by 1.5 after
/// success up to step_size. Stops at grad_tol or max_iters, or stalls when the
/// step drops below 1e-16 (reported as not converged).
///
/// Restart 0 starts from `init`; restart r > 0 from sample_uniform with a seed
/// derived from (params.seed, r). Restarts may run concurrently; the winner is
/// the lowest loss with ties going to the lowest restart index, so the result
/// does not depend on scheduling.
OptResult minimize(const Configuration& init, const OptParams& params);
OptResult minimize(const PairConfiguration& init, const OptParams& params);

}  // namespace etflab
