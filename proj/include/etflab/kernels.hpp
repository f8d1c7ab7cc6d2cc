#pragma once

#include <cstddef>
#include <span>

#include "etflab/sphere.hpp"

/// O(n^2 m) pair kernels behind the energy, optimization and moment code.
///
/// Two implementations share each signature:
///  - serial::   upper-triangle loops that scatter symmetric contributions;
///               the reference the tests compare against.
///  - parallel:: OpenMP row-parallel gathers. Each row is owned by one thread
///               and row partials are reduced serially in row order, so the
///               result does not depend on the thread count or schedule.
///
/// Gradient spans are n*m (row-major, like the points); pass an empty span to
/// skip the gradient.
namespace etflab::kernels {

struct PointsView {
  std::span<const double> data;
  std::size_t n;
  std::size_t m;

  PointsView(std::span<const double> d, std::size_t rows, std::size_t dim) : data(d), n(rows), m(dim) {}
  PointsView(const Configuration& c) : data(c.data()), n(c.n()), m(c.m()) {}  // NOLINT(implicit)

  const double* row(std::size_t i) const noexcept { return data.data() + i * m; }
};

namespace serial {

/// out[i*n + j] = <u_i, u_j>.
void gram(PointsView p, std::span<double> out);
/// sum_i log(1 + sum_{j != i} exp(alpha (<u_j,u_i> - 1))) and its ambient gradient.
double sym_ce(PointsView p, double alpha, std::span<double> grad);
/// sum_i log sum_j exp(alpha <u_i,u_j>), diagonal included.
double shifted_lse(PointsView p, double alpha);
/// sum_{i,j} exp(alpha <u_i,u_j> - shift) and its ambient gradient.
double pair_exp_sum(PointsView p, double alpha, double shift, std::span<double> grad);
/// sum_i [log sum_j exp(<v_j,u_i>) - <v_i,u_i>] and its gradients in u and v.
double asym_ce(PointsView u, PointsView v, std::span<double> grad_u, std::span<double> grad_v);
/// sum_{i,j} <u_i,u_j>^2.
double frame_potential(PointsView p);
/// out[l] = sum_{i,j} C_l^lambda(<u_i,u_j>) for l = 0..out.size()-1.
void moment_sums(PointsView p, double lambda, std::span<double> out);

}  // namespace serial

/// Same contracts as serial::.
namespace parallel {

void gram(PointsView p, std::span<double> out);
double sym_ce(PointsView p, double alpha, std::span<double> grad);
double shifted_lse(PointsView p, double alpha);
double pair_exp_sum(PointsView p, double alpha, double shift, std::span<double> grad);
double asym_ce(PointsView u, PointsView v, std::span<double> grad_u, std::span<double> grad_v);
double frame_potential(PointsView p);
void moment_sums(PointsView p, double lambda, std::span<double> out);

/// Threads an outermost parallel region would use (1 without OpenMP).
int max_threads() noexcept;

}  // namespace parallel

}  // namespace etflab::kernels
