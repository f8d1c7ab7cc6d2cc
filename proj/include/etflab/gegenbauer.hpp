#pragma once

#include <cstddef>
#include <vector>

#include "etflab/sphere.hpp"

/// Zonal expansion of t -> exp(alpha t) on S^d in Gegenbauer polynomials.
///
/// Dimension convention: functions taking `d` use the sphere S^d in R^{d+1}
/// with index lambda = (d-1)/2 and weight (1-t^2)^{(d-2)/2}. Functions taking a
/// Configuration use its ambient dimension m, so d = m - 1 and lambda = (m-2)/2.
/// d = 1 (lambda = 0) is not supported.
namespace etflab {

/// C_k^lambda(t) by the three-term recurrence. Throws DomainError for |t| > 1 + 1e-12.
double gegenbauer_eval(std::size_t k, double lambda, double t);

/// Squared norm int (1-x^2)^{(d-2)/2} C_k^{(d-1)/2}(x)^2 dx, closed form.
double alpha1(std::size_t k, int d);
double log_alpha1(std::size_t k, int d);

/// Rodrigues constant Gamma(d/2) Gamma(k+d-1) / (2^k k! Gamma(d-1) Gamma(d/2+k)).
double alpha2(std::size_t k, int d);
double log_alpha2(std::size_t k, int d);

/// log b_k where exp(alpha x) = sum_k b_k C_k^{(d-1)/2}(x), using the
/// integrated-by-parts form
///   b_k = alpha2 alpha^k int exp(alpha x)(1-x^2)^{k+(d-2)/2} dx / alpha1.
/// All factors are combined in log space, so this stays finite where b_k underflows.
double log_coeff_b(std::size_t k, int d, double alpha);

/// exp(log_coeff_b); may underflow to 0 for very large k.
double coeff_b(std::size_t k, int d, double alpha);

/// Immutable table b_0..b_K for one (d, alpha).
class GegenbauerSeries {
 public:
  GegenbauerSeries(int d, double alpha, std::size_t max_degree);

  int d() const noexcept { return d_; }
  double lambda() const noexcept { return lambda_; }
  double alpha() const noexcept { return alpha_; }
  std::size_t max_degree() const noexcept { return coeffs_.size() - 1; }
  const std::vector<double>& coeffs() const noexcept { return coeffs_; }
  const std::vector<double>& log_coeffs() const noexcept { return log_coeffs_; }

  /// Truncated sum sum_{k <= K} b_k C_k^lambda(t).
  double evaluate(double t) const;

  /// a_k = b_k lambda / (k + lambda), the per-harmonic weight in the addition-formula form.
  double harmonic_weight(std::size_t k) const;

 private:
  int d_;
  double lambda_;
  double alpha_;
  std::vector<double> coeffs_;
  std::vector<double> log_coeffs_;
};

/// max over `grid` equispaced t in [-1, 1] of |exp(alpha t) - sum_{k<=K} b_k C_k(t)|.
double expansion_residual(std::size_t max_degree, int d, double alpha, std::size_t grid);

/// log(1/b_k) / (k log k) for k = k_lo..k_hi (k_lo >= 2).
std::vector<double> decay_diagnostic(int d, double alpha, std::size_t k_lo, std::size_t k_hi);

/// M_l = (1/n^2) sum_{i,j} C_l^lambda(<x_i,x_j>) with lambda = (m-2)/2. Requires m >= 3.
double moment(const Configuration& config, std::size_t ell);

/// M_0..M_L in one pass.
std::vector<double> moments(const Configuration& config, std::size_t max_degree);

/// sum_{l=1..K} b_l M_l with b_l for d = m-1: the energy gap written through moments.
double gap_via_moments(const Configuration& config, double alpha, std::size_t max_degree);
double gap_via_moments(const Configuration& config, const GegenbauerSeries& series);

}  // namespace etflab
