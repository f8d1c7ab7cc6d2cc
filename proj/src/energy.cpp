#include "etflab/energy.hpp"

#include <cmath>
#include <numbers>

#include <fmt/core.h>

#include "etflab/error.hpp"
#include "etflab/kernels.hpp"
#include "etflab/quadrature.hpp"

namespace etflab {

namespace {

void require_alpha(double alpha) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha))
    throw ParameterError(fmt::format("alpha must be finite and >= 0, got {}", alpha));
}

double nd(std::size_t n) { return static_cast<double>(n); }

}  // namespace

double loss_sym(const Configuration& config, double alpha) {
  require_alpha(alpha);
  return kernels::parallel::sym_ce(config, alpha, {});
}

double loss_asym(const PairConfiguration& pair) {
  return kernels::parallel::asym_ce(pair.u(), pair.v(), {}, {});
}

double lower_bound_sym(std::size_t n, double alpha) {
  if (n < 2) throw ParameterError("lower_bound_sym needs n >= 2");
  require_alpha(alpha);
  const double k = nd(n);
  return k * std::log1p((k - 1.0) * std::exp(-k * alpha / (k - 1.0)));
}

double shifted_loss(const Configuration& config, double alpha) {
  require_alpha(alpha);
  return kernels::parallel::shifted_lse(config, alpha);
}

double jensen_upper(const Configuration& config, double alpha) {
  require_alpha(alpha);
  // The largest exponent is the diagonal alpha <u_i,u_i> = alpha.
  const double k = nd(config.n());
  const double s = kernels::parallel::pair_exp_sum(config, alpha, alpha, {});
  return k * (alpha + std::log(s / k));
}

double pair_exp_mean(const Configuration& config, double alpha) {
  require_alpha(alpha);
  const double k = nd(config.n());
  return kernels::parallel::pair_exp_sum(config, alpha, 0.0, {}) / (k * k);
}

double frame_potential(const Configuration& config) { return kernels::parallel::frame_potential(config); }

double uniform_energy(std::size_t m, double alpha) {
  if (m < 2) throw ParameterError(fmt::format("uniform_energy needs m >= 2, got {}", m));
  require_alpha(alpha);
  if (alpha == 0.0) return 1.0;
  const double md = nd(m);
  // ln A(m-1) - ln A(m) = -ln(pi)/2 + lgamma(m/2) - lgamma((m-1)/2)
  const double log_ratio = -0.5 * std::log(std::numbers::pi) + std::lgamma(0.5 * md) - std::lgamma(0.5 * (md - 1.0));
  // t = sin(theta): (1-t^2)^{(m-3)/2} dt = cos^{m-2}(theta) dtheta
  const int power = static_cast<int>(m) - 2;
  const auto integrand = [alpha, power](double theta) {
    return std::exp(alpha * std::sin(theta)) * std::pow(std::cos(theta), power);
  };
  const double half_pi = 0.5 * std::numbers::pi;
  const double integral = integrate_adaptive(integrand, -half_pi, half_pi).value;
  return std::exp(log_ratio) * integral;
}

double energy_gap(const Configuration& config, double alpha) {
  return pair_exp_mean(config, alpha) - uniform_energy(config.m(), alpha);
}

double taylor_order2(const Configuration& config, double alpha) {
  require_alpha(alpha);
  const double k = nd(config.n());
  const auto u = config.resultant();
  const double u2 = dot(u, u);
  double projected = 0.0;
  for (std::size_t i = 0; i < config.n(); ++i) {
    const double c = dot(config.point(i), u);
    projected += c * c;
  }
  const double f = frame_potential(config);
  return k * std::log(k) + alpha / k * u2 + alpha * alpha / (2.0 * k) * f - alpha * alpha / (2.0 * k * k) * projected;
}

double effective_energy(const Configuration& config, double alpha) {
  require_alpha(alpha);
  const double k = nd(config.n());
  const auto u = config.resultant();
  return alpha / k * dot(u, u) + alpha * alpha / (2.0 * k) * frame_potential(config);
}

EnergyReport energy_report(const Configuration& config, double alpha) {
  EnergyReport r{};
  r.loss_sym = loss_sym(config, alpha);
  r.lower_bound = lower_bound_sym(config.n(), alpha);
  r.jensen_upper = jensen_upper(config, alpha);
  r.frame_potential = frame_potential(config);
  r.pair_exp_mean = pair_exp_mean(config, alpha);
  r.uniform_energy = uniform_energy(config.m(), alpha);
  r.gap = r.pair_exp_mean - r.uniform_energy;
  return r;
}

}  // namespace etflab
