#include "etflab/gegenbauer.hpp"

#include <cmath>
#include <numbers>

#include <fmt/core.h>

#include "etflab/error.hpp"
#include "etflab/kernels.hpp"
#include "etflab/quadrature.hpp"

namespace etflab {

namespace {

void require_d(int d) {
  if (d < 2) throw UnsupportedDimensionError(fmt::format("Gegenbauer expansion needs d >= 2 (m >= 3), got d={}", d));
}

void require_positive_alpha(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw ParameterError(fmt::format("expansion coefficients need finite alpha > 0, got {}", alpha));
}

double ambient_lambda(const Configuration& config) {
  if (config.m() < 3)
    throw UnsupportedDimensionError(
        fmt::format("Gegenbauer moments need m >= 3 (lambda = (m-2)/2 > 0), got m={}", config.m()));
  return 0.5 * (static_cast<double>(config.m()) - 2.0);
}

}  // namespace

double gegenbauer_eval(std::size_t k, double lambda, double t) {
  if (!(lambda > 0.0)) throw ParameterError(fmt::format("Gegenbauer index must be > 0, got {}", lambda));
  if (!(std::abs(t) <= 1.0 + 1e-12)) throw DomainError(fmt::format("Gegenbauer argument {} outside [-1, 1]", t));
  double c0 = 1.0;
  if (k == 0) return c0;
  double c1 = 2.0 * lambda * t;
  for (std::size_t j = 2; j <= k; ++j) {
    const double jd = static_cast<double>(j);
    const double c2 = (2.0 * (jd + lambda - 1.0) * t * c1 - (jd + 2.0 * lambda - 2.0) * c0) / jd;
    c0 = c1;
    c1 = c2;
  }
  return c1;
}

double log_alpha1(std::size_t k, int d) {
  require_d(d);
  const double kd = static_cast<double>(k);
  const double dd = d;
  return std::log(std::numbers::pi) + (2.0 - dd) * std::numbers::ln2 + std::lgamma(kd + dd - 1.0) -
         std::lgamma(kd + 1.0) - std::log(kd + 0.5 * (dd - 1.0)) - 2.0 * std::lgamma(0.5 * (dd - 1.0));
}

double alpha1(std::size_t k, int d) { return std::exp(log_alpha1(k, d)); }

double log_alpha2(std::size_t k, int d) {
  require_d(d);
  const double kd = static_cast<double>(k);
  const double dd = d;
  return -kd * std::numbers::ln2 - std::lgamma(kd + 1.0) + std::lgamma(0.5 * dd) + std::lgamma(kd + dd - 1.0) -
         std::lgamma(dd - 1.0) - std::lgamma(0.5 * dd + kd);
}

double alpha2(std::size_t k, int d) { return std::exp(log_alpha2(k, d)); }

double log_coeff_b(std::size_t k, int d, double alpha) {
  require_d(d);
  require_positive_alpha(alpha);
  // x = sin(theta): (1-x^2)^{k+(d-2)/2} dx = cos^{2k+d-1}(theta) dtheta.
  // The weight factor is taken in log form so large k does not underflow early.
  const double power = 2.0 * static_cast<double>(k) + d - 1.0;
  const auto integrand = [alpha, power](double theta) {
    const double c = std::cos(theta);
    if (c <= 0.0) return 0.0;
    return std::exp(alpha * (std::sin(theta) - 1.0) + power * std::log(c));
  };
  const double half_pi = 0.5 * std::numbers::pi;
  const double integral = integrate_adaptive(integrand, -half_pi, half_pi).value;
  if (!(integral > 0.0)) throw NumericError(fmt::format("coefficient integral for k={} is not positive", k));
  return log_alpha2(k, d) - log_alpha1(k, d) + static_cast<double>(k) * std::log(alpha) + alpha + std::log(integral);
}

double coeff_b(std::size_t k, int d, double alpha) { return std::exp(log_coeff_b(k, d, alpha)); }

GegenbauerSeries::GegenbauerSeries(int d, double alpha, std::size_t max_degree)
    : d_(d), lambda_(0.5 * (d - 1.0)), alpha_(alpha) {
  require_d(d);
  require_positive_alpha(alpha);
  log_coeffs_.reserve(max_degree + 1);
  coeffs_.reserve(max_degree + 1);
  for (std::size_t k = 0; k <= max_degree; ++k) {
    log_coeffs_.push_back(log_coeff_b(k, d, alpha));
    coeffs_.push_back(std::exp(log_coeffs_.back()));
  }
}

double GegenbauerSeries::evaluate(double t) const {
  if (!(std::abs(t) <= 1.0 + 1e-12)) throw DomainError(fmt::format("expansion argument {} outside [-1, 1]", t));
  double c0 = 1.0;
  double c1 = 2.0 * lambda_ * t;
  double s = coeffs_[0];
  if (coeffs_.size() > 1) s += coeffs_[1] * c1;
  for (std::size_t j = 2; j < coeffs_.size(); ++j) {
    const double jd = static_cast<double>(j);
    const double c2 = (2.0 * (jd + lambda_ - 1.0) * t * c1 - (jd + 2.0 * lambda_ - 2.0) * c0) / jd;
    s += coeffs_[j] * c2;
    c0 = c1;
    c1 = c2;
  }
  return s;
}

double GegenbauerSeries::harmonic_weight(std::size_t k) const {
  return coeffs_.at(k) * lambda_ / (static_cast<double>(k) + lambda_);
}

double expansion_residual(std::size_t max_degree, int d, double alpha, std::size_t grid) {
  if (grid < 2) throw ParameterError("expansion_residual needs grid >= 2");
  const GegenbauerSeries series(d, alpha, max_degree);
  double worst = 0.0;
  for (std::size_t i = 0; i < grid; ++i) {
    const double t = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(grid - 1);
    worst = std::max(worst, std::abs(std::exp(alpha * t) - series.evaluate(t)));
  }
  return worst;
}

std::vector<double> decay_diagnostic(int d, double alpha, std::size_t k_lo, std::size_t k_hi) {
  if (k_lo < 2) throw ParameterError("decay_diagnostic needs k_lo >= 2 (k log k vanishes at k=1)");
  if (k_hi < k_lo) throw ParameterError("decay_diagnostic needs k_hi >= k_lo");
  std::vector<double> out;
  out.reserve(k_hi - k_lo + 1);
  for (std::size_t k = k_lo; k <= k_hi; ++k) {
    const double kd = static_cast<double>(k);
    out.push_back(-log_coeff_b(k, d, alpha) / (kd * std::log(kd)));
  }
  return out;
}

std::vector<double> moments(const Configuration& config, std::size_t max_degree) {
  const double lambda = ambient_lambda(config);
  std::vector<double> sums(max_degree + 1);
  kernels::parallel::moment_sums(config, lambda, sums);
  const double n2 = static_cast<double>(config.n()) * static_cast<double>(config.n());
  for (double& s : sums) s /= n2;
  sums[0] = 1.0;
  return sums;
}

double moment(const Configuration& config, std::size_t ell) { return moments(config, ell)[ell]; }

double gap_via_moments(const Configuration& config, const GegenbauerSeries& series) {
  if (series.d() + 1 != static_cast<int>(config.m()))
    throw ParameterError(fmt::format("series built for d={} but configuration has m={}", series.d(), config.m()));
  const auto mom = moments(config, series.max_degree());
  double gap = 0.0;
  for (std::size_t l = series.max_degree(); l >= 1; --l) gap += series.coeffs()[l] * mom[l];
  return gap;
}

double gap_via_moments(const Configuration& config, double alpha, std::size_t max_degree) {
  ambient_lambda(config);
  const GegenbauerSeries series(static_cast<int>(config.m()) - 1, alpha, max_degree);
  return gap_via_moments(config, series);
}

}  // namespace etflab
