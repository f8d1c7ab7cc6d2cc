#pragma once

// Test-only reference computations. Nothing here calls into the library's
// numerical routines beyond reading coordinates.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/binomial.hpp>
#include <boost/math/special_functions/factorials.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/log1p.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "etflab/sphere.hpp"

namespace oracle {

using boost::multiprecision::cpp_bin_float_50;
using boost::multiprecision::cpp_bin_float_100;

inline long double ip(const etflab::Configuration& c, std::size_t i, std::size_t j) {
  long double s = 0;
  for (std::size_t k = 0; k < c.m(); ++k) s += static_cast<long double>(c.point(i)[k]) * c.point(j)[k];
  return s;
}

inline long double ip(const etflab::Configuration& a, std::size_t i, const etflab::Configuration& b, std::size_t j) {
  long double s = 0;
  for (std::size_t k = 0; k < a.m(); ++k) s += static_cast<long double>(a.point(i)[k]) * b.point(j)[k];
  return s;
}

/// Unstabilized double loop for sum_i log(1 + sum_{j != i} e^{alpha(<u_j,u_i> - 1)}).
inline double loss_sym(const etflab::Configuration& c, double alpha) {
  long double total = 0;
  for (std::size_t i = 0; i < c.n(); ++i) {
    long double s = 1;
    for (std::size_t j = 0; j < c.n(); ++j)
      if (j != i) s += std::exp(alpha * (ip(c, i, j) - 1.0L));
    total += std::log(s);
  }
  return static_cast<double>(total);
}

/// 50-digit evaluation of loss_sym from the exact double coordinates.
inline cpp_bin_float_50 loss_sym_hp(const etflab::Configuration& c, double alpha) {
  cpp_bin_float_50 total = 0;
  for (std::size_t i = 0; i < c.n(); ++i) {
    cpp_bin_float_50 s = 0;
    for (std::size_t j = 0; j < c.n(); ++j) {
      if (j == i) continue;
      cpp_bin_float_50 g = 0;
      for (std::size_t k = 0; k < c.m(); ++k) g += cpp_bin_float_50(c.point(i)[k]) * cpp_bin_float_50(c.point(j)[k]);
      s += exp(cpp_bin_float_50(alpha) * (g - 1));
    }
    total += boost::math::log1p(s);
  }
  return total;
}

inline double shifted_loss(const etflab::Configuration& c, double alpha) {
  long double total = 0;
  for (std::size_t i = 0; i < c.n(); ++i) {
    long double s = 0;
    for (std::size_t j = 0; j < c.n(); ++j) s += std::exp(alpha * ip(c, i, j));
    total += std::log(s);
  }
  return static_cast<double>(total);
}

inline double pair_exp_mean(const etflab::Configuration& c, double alpha) {
  long double s = 0;
  for (std::size_t i = 0; i < c.n(); ++i)
    for (std::size_t j = 0; j < c.n(); ++j) s += std::exp(alpha * ip(c, i, j));
  return static_cast<double>(s / (static_cast<long double>(c.n()) * c.n()));
}

inline double loss_asym(const etflab::Configuration& u, const etflab::Configuration& v) {
  long double total = 0;
  for (std::size_t i = 0; i < u.n(); ++i) {
    long double s = 0;
    for (std::size_t j = 0; j < u.n(); ++j) s += std::exp(ip(u, i, v, j));
    total += std::log(s / std::exp(ip(u, i, v, i)));
  }
  return static_cast<double>(total);
}

/// Haar-ish random orthogonal matrix (Gram-Schmidt on a Gaussian matrix), row-major m x m.
inline std::vector<double> random_rotation(std::size_t m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  std::vector<double> q(m * m);
  for (auto& x : q) x = nd(rng);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t p = 0; p < r; ++p) {
      double c = 0;
      for (std::size_t k = 0; k < m; ++k) c += q[r * m + k] * q[p * m + k];
      for (std::size_t k = 0; k < m; ++k) q[r * m + k] -= c * q[p * m + k];
    }
    double nrm = 0;
    for (std::size_t k = 0; k < m; ++k) nrm += q[r * m + k] * q[r * m + k];
    nrm = std::sqrt(nrm);
    for (std::size_t k = 0; k < m; ++k) q[r * m + k] /= nrm;
  }
  return q;
}

inline etflab::Configuration rotate(const etflab::Configuration& c, const std::vector<double>& q) {
  const std::size_t m = c.m();
  std::vector<double> out(c.n() * m, 0.0);
  for (std::size_t i = 0; i < c.n(); ++i)
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t k = 0; k < m; ++k) out[i * m + r] += q[r * m + k] * c.point(i)[k];
  return etflab::Configuration(c.n(), m, std::move(out));
}

/// Explicit sum C_k^lambda(x) = sum_j (-1)^j Gamma(k-j+lambda) / (Gamma(lambda) j! (k-2j)!) (2x)^{k-2j},
/// evaluated in 100-digit arithmetic.
inline double gegenbauer_explicit(unsigned k, double lambda, double x) {
  using R = cpp_bin_float_100;
  const R lam(lambda);
  const R two_x = 2 * R(x);
  R s = 0;
  for (unsigned j = 0; 2 * j <= k; ++j) {
    R term = boost::math::tgamma(R(k - j) + lam) / (boost::math::tgamma(lam) * boost::math::factorial<R>(j) *
                                                   boost::math::factorial<R>(k - 2 * j));
    term *= pow(two_x, static_cast<int>(k - 2 * j));
    s += (j % 2 == 0) ? term : R(-term);
  }
  return static_cast<double>(s);
}

/// Rodrigues formula for lambda = 3/2 (the sphere S^4, d = 4):
/// C_k(x) = (-1)^k alpha2(k,4) (1-x^2)^{-1} d^k/dx^k (1-x^2)^{k+1}, with the
/// polynomial differentiated symbolically.
inline double gegenbauer_rodrigues_d4(unsigned k, double x) {
  using R = cpp_bin_float_50;
  const unsigned p = k + 1;
  // (1-x^2)^p = sum_i binom(p,i) (-1)^i x^{2i}
  std::vector<R> coef(2 * p + 1, R(0));
  for (unsigned i = 0; i <= p; ++i) {
    R b = boost::math::binomial_coefficient<R>(p, i);
    coef[2 * i] = (i % 2 == 0) ? b : R(-b);
  }
  for (unsigned d = 0; d < k; ++d) {
    std::vector<R> next(coef.size(), R(0));
    for (std::size_t e = 1; e < coef.size(); ++e) next[e - 1] = coef[e] * R(static_cast<unsigned>(e));
    coef.swap(next);
  }
  R val = 0;
  R xp = 1;
  for (const auto& c : coef) {
    val += c * xp;
    xp *= R(x);
  }
  // alpha2(k, 4) = Gamma(2) Gamma(k+3) / (2^k k! Gamma(3) Gamma(k+2)) = (k+2) / (2^{k+1} k!)
  const R a2 = R(k + 2) / (pow(R(2), static_cast<int>(k + 1)) * boost::math::factorial<R>(k));
  const R sign = (k % 2 == 0) ? R(1) : R(-1);
  return static_cast<double>(sign * a2 * val / (1 - R(x) * R(x)));
}

/// I_0(x) = sum (x/2)^{2k} / (k!)^2.
inline double bessel_i0_series(double x) {
  double term = 1.0;
  double s = 1.0;
  for (int k = 1; k < 60; ++k) {
    term *= (x / 2) * (x / 2) / (static_cast<double>(k) * k);
    s += term;
  }
  return s;
}

/// tanh-sinh integral over [-1, 1]; copes with algebraic endpoint singularities.
template <class F>
double integrate(F f) {
  boost::math::quadrature::tanh_sinh<double> ts(20);
  return ts.integrate(f, -1.0, 1.0, 1e-14);
}

/// int_{-1}^{1} f(x) (1-x^2)^{(d-2)/2} dx after x = cos(theta), by adaptive
/// 61-point Gauss-Kronrod; suited to oscillatory polynomial integrands.
template <class F>
double integrate_weighted(F f, int d) {
  auto g = [&](double th) { return f(std::cos(th)) * std::pow(std::sin(th), d - 1); };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(g, 0.0, std::acos(-1.0), 15, 1e-14);
}

}  // namespace oracle
