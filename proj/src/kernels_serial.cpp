#include <algorithm>
#include <cmath>
#include <vector>

#include "etflab/error.hpp"
#include "etflab/kernels.hpp"
#include "kernel_detail.hpp"

namespace etflab::kernels::serial {

using detail::axpy;
using detail::row_dot;

void gram(PointsView p, std::span<double> out) {
  const std::size_t n = p.n;
  if (out.size() != n * n) throw ParameterError("gram output must be n*n");
  for (std::size_t i = 0; i < n; ++i) {
    out[i * n + i] = row_dot(p.row(i), p.row(i), p.m);
    for (std::size_t j = i + 1; j < n; ++j) {
      const double g = row_dot(p.row(i), p.row(j), p.m);
      out[i * n + j] = g;
      out[j * n + i] = g;
    }
  }
}

double sym_ce(PointsView p, double alpha, std::span<double> grad) {
  const std::size_t n = p.n;
  const std::size_t m = p.m;
  std::vector<double> g(n * n);
  gram(p, g);
  if (!grad.empty()) std::fill(grad.begin(), grad.end(), 0.0);
  double loss = 0.0;
  std::vector<double> e(n);
  for (std::size_t i = 0; i < n; ++i) {
    double shift = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) shift = std::max(shift, alpha * (g[i * n + j] - 1.0));
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      e[j] = (j == i) ? 0.0 : std::exp(alpha * (g[i * n + j] - 1.0) - shift);
      s += e[j];
    }
    const double denom = std::exp(-shift) + s;
    loss += shift == 0.0 ? std::log1p(s) : shift + std::log(denom);
    if (grad.empty()) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double w = alpha * e[j] / denom;
      axpy(w, p.row(j), grad.data() + i * m, m);
      axpy(w, p.row(i), grad.data() + j * m, m);
    }
  }
  return loss;
}

double shifted_lse(PointsView p, double alpha) {
  const std::size_t n = p.n;
  std::vector<double> g(n * n);
  gram(p, g);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double shift = alpha * g[i * n];
    for (std::size_t j = 1; j < n; ++j) shift = std::max(shift, alpha * g[i * n + j]);
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += std::exp(alpha * g[i * n + j] - shift);
    total += shift + std::log(s);
  }
  return total;
}

double pair_exp_sum(PointsView p, double alpha, double shift, std::span<double> grad) {
  const std::size_t n = p.n;
  const std::size_t m = p.m;
  if (!grad.empty()) std::fill(grad.begin(), grad.end(), 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double ei = std::exp(alpha * row_dot(p.row(i), p.row(i), m) - shift);
    total += ei;
    if (!grad.empty()) axpy(2.0 * alpha * ei, p.row(i), grad.data() + i * m, m);
    for (std::size_t j = i + 1; j < n; ++j) {
      const double e = std::exp(alpha * row_dot(p.row(i), p.row(j), m) - shift);
      total += 2.0 * e;
      if (grad.empty()) continue;
      axpy(2.0 * alpha * e, p.row(j), grad.data() + i * m, m);
      axpy(2.0 * alpha * e, p.row(i), grad.data() + j * m, m);
    }
  }
  return total;
}

double asym_ce(PointsView u, PointsView v, std::span<double> grad_u, std::span<double> grad_v) {
  const std::size_t n = u.n;
  const std::size_t m = u.m;
  if (!grad_u.empty()) std::fill(grad_u.begin(), grad_u.end(), 0.0);
  if (!grad_v.empty()) std::fill(grad_v.begin(), grad_v.end(), 0.0);
  std::vector<double> a(n);
  double loss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double shift = -INFINITY;
    for (std::size_t j = 0; j < n; ++j) {
      a[j] = row_dot(v.row(j), u.row(i), m);
      shift = std::max(shift, a[j]);
    }
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += std::exp(a[j] - shift);
    loss += shift + std::log(s) - a[i];
    for (std::size_t j = 0; j < n; ++j) {
      const double prob = std::exp(a[j] - shift) / s - (i == j ? 1.0 : 0.0);
      if (!grad_u.empty()) axpy(prob, v.row(j), grad_u.data() + i * m, m);
      if (!grad_v.empty()) axpy(prob, u.row(i), grad_v.data() + j * m, m);
    }
  }
  return loss;
}

double frame_potential(PointsView p) {
  double total = 0.0;
  for (std::size_t i = 0; i < p.n; ++i) {
    const double d = row_dot(p.row(i), p.row(i), p.m);
    total += d * d;
    for (std::size_t j = i + 1; j < p.n; ++j) {
      const double g = row_dot(p.row(i), p.row(j), p.m);
      total += 2.0 * g * g;
    }
  }
  return total;
}

void moment_sums(PointsView p, double lambda, std::span<double> out) {
  std::fill(out.begin(), out.end(), 0.0);
  if (out.empty()) return;
  for (std::size_t i = 0; i < p.n; ++i) {
    detail::accumulate_gegenbauer(lambda, row_dot(p.row(i), p.row(i), p.m), 1.0, out);
    for (std::size_t j = i + 1; j < p.n; ++j)
      detail::accumulate_gegenbauer(lambda, row_dot(p.row(i), p.row(j), p.m), 2.0, out);
  }
}

}  // namespace etflab::kernels::serial
