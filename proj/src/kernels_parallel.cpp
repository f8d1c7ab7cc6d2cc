#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#ifdef ETFLAB_HAVE_OPENMP
#include <omp.h>
#endif

#include "etflab/error.hpp"
#include "etflab/kernels.hpp"
#include "kernel_detail.hpp"

namespace etflab::kernels::parallel {

using detail::axpy;
using detail::row_dot;

namespace {

// Signed loop index for OpenMP worksharing.
using index_t = long long;

// In-order sum of row partials.
double ordered_sum(const std::vector<double>& partial) { return std::accumulate(partial.begin(), partial.end(), 0.0); }

}  // namespace

int max_threads() noexcept {
#ifdef ETFLAB_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void gram(PointsView p, std::span<double> out) {
  const index_t n = static_cast<index_t>(p.n);
  if (out.size() != p.n * p.n) throw ParameterError("gram output must be n*n");
#pragma omp parallel for schedule(static)
  for (index_t i = 0; i < n; ++i)
    for (index_t j = 0; j < n; ++j) out[i * n + j] = row_dot(p.row(i), p.row(j), p.m);
}

double sym_ce(PointsView p, double alpha, std::span<double> grad) {
  const index_t n = static_cast<index_t>(p.n);
  const std::size_t m = p.m;
  const bool want_grad = !grad.empty();
  std::vector<double> row_loss(p.n);
  // weights[i*n + j] = exp(alpha(<u_j,u_i> - 1)) / (1 + sum_{l != i} ...), zero on the diagonal.
  std::vector<double> weights(want_grad ? p.n * p.n : 0);
#pragma omp parallel
  {
    std::vector<double> a(p.n);
#pragma omp for schedule(static)
    for (index_t i = 0; i < n; ++i) {
      double shift = 0.0;
      for (index_t j = 0; j < n; ++j) {
        a[j] = (j == i) ? -INFINITY : alpha * (row_dot(p.row(i), p.row(j), m) - 1.0);
        shift = std::max(shift, a[j]);
      }
      double s = 0.0;
      for (index_t j = 0; j < n; ++j) {
        a[j] = std::exp(a[j] - shift);
        s += a[j];
      }
      const double denom = std::exp(-shift) + s;
      row_loss[i] = shift == 0.0 ? std::log1p(s) : shift + std::log(denom);
      if (want_grad)
        for (index_t j = 0; j < n; ++j) weights[i * n + j] = a[j] / denom;
    }
    if (want_grad) {
#pragma omp for schedule(static)
      for (index_t k = 0; k < n; ++k) {
        double* gk = grad.data() + k * m;
        std::fill(gk, gk + m, 0.0);
        for (index_t j = 0; j < n; ++j) {
          if (j == k) continue;
          axpy(alpha * (weights[k * n + j] + weights[j * n + k]), p.row(j), gk, m);
        }
      }
    }
  }
  return ordered_sum(row_loss);
}

double shifted_lse(PointsView p, double alpha) {
  const index_t n = static_cast<index_t>(p.n);
  std::vector<double> row_val(p.n);
#pragma omp parallel
  {
    std::vector<double> a(p.n);
#pragma omp for schedule(static)
    for (index_t i = 0; i < n; ++i) {
      double shift = -INFINITY;
      for (index_t j = 0; j < n; ++j) {
        a[j] = alpha * row_dot(p.row(i), p.row(j), p.m);
        shift = std::max(shift, a[j]);
      }
      double s = 0.0;
      for (index_t j = 0; j < n; ++j) s += std::exp(a[j] - shift);
      row_val[i] = shift + std::log(s);
    }
  }
  return ordered_sum(row_val);
}

double pair_exp_sum(PointsView p, double alpha, double shift, std::span<double> grad) {
  const index_t n = static_cast<index_t>(p.n);
  const std::size_t m = p.m;
  const bool want_grad = !grad.empty();
  std::vector<double> row_val(p.n);
#pragma omp parallel for schedule(static)
  for (index_t i = 0; i < n; ++i) {
    double* gi = want_grad ? grad.data() + i * m : nullptr;
    if (gi) std::fill(gi, gi + m, 0.0);
    double s = 0.0;
    for (index_t j = 0; j < n; ++j) {
      const double e = std::exp(alpha * row_dot(p.row(i), p.row(j), m) - shift);
      s += e;
      if (gi) axpy(2.0 * alpha * e, p.row(j), gi, m);
    }
    row_val[i] = s;
  }
  return ordered_sum(row_val);
}

double asym_ce(PointsView u, PointsView v, std::span<double> grad_u, std::span<double> grad_v) {
  const index_t n = static_cast<index_t>(u.n);
  const std::size_t m = u.m;
  const bool want_grad = !grad_u.empty() || !grad_v.empty();
  std::vector<double> row_loss(u.n);
  // probs[i*n + j] = softmax_j <v_j, u_i>
  std::vector<double> probs(want_grad ? u.n * u.n : 0);
#pragma omp parallel
  {
    std::vector<double> a(u.n);
#pragma omp for schedule(static)
    for (index_t i = 0; i < n; ++i) {
      double shift = -INFINITY;
      for (index_t j = 0; j < n; ++j) {
        a[j] = row_dot(v.row(j), u.row(i), m);
        shift = std::max(shift, a[j]);
      }
      const double own = a[i];
      double s = 0.0;
      for (index_t j = 0; j < n; ++j) {
        a[j] = std::exp(a[j] - shift);
        s += a[j];
      }
      row_loss[i] = shift + std::log(s) - own;
      if (want_grad)
        for (index_t j = 0; j < n; ++j) probs[i * n + j] = a[j] / s;
    }
    if (!grad_u.empty()) {
#pragma omp for schedule(static)
      for (index_t i = 0; i < n; ++i) {
        double* gi = grad_u.data() + i * m;
        std::fill(gi, gi + m, 0.0);
        for (index_t j = 0; j < n; ++j) axpy(probs[i * n + j] - (i == j ? 1.0 : 0.0), v.row(j), gi, m);
      }
    }
    if (!grad_v.empty()) {
#pragma omp for schedule(static)
      for (index_t j = 0; j < n; ++j) {
        double* gj = grad_v.data() + j * m;
        std::fill(gj, gj + m, 0.0);
        for (index_t i = 0; i < n; ++i) axpy(probs[i * n + j] - (i == j ? 1.0 : 0.0), u.row(i), gj, m);
      }
    }
  }
  return ordered_sum(row_loss);
}

double frame_potential(PointsView p) {
  const index_t n = static_cast<index_t>(p.n);
  std::vector<double> row_val(p.n);
#pragma omp parallel for schedule(static)
  for (index_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (index_t j = 0; j < n; ++j) {
      const double g = row_dot(p.row(i), p.row(j), p.m);
      s += g * g;
    }
    row_val[i] = s;
  }
  return ordered_sum(row_val);
}

void moment_sums(PointsView p, double lambda, std::span<double> out) {
  const index_t n = static_cast<index_t>(p.n);
  const std::size_t terms = out.size();
  std::fill(out.begin(), out.end(), 0.0);
  if (terms == 0) return;
  std::vector<double> rows(p.n * terms, 0.0);
#pragma omp parallel for schedule(static)
  for (index_t i = 0; i < n; ++i) {
    std::span<double> acc(rows.data() + i * terms, terms);
    for (index_t j = 0; j < n; ++j) detail::accumulate_gegenbauer(lambda, row_dot(p.row(i), p.row(j), p.m), 1.0, acc);
  }
  for (std::size_t i = 0; i < p.n; ++i)
    for (std::size_t l = 0; l < terms; ++l) out[l] += rows[i * terms + l];
}

}  // namespace etflab::kernels::parallel
