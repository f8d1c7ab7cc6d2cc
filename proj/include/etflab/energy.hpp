#pragma once

#include <cstddef>

#include "etflab/sphere.hpp"

namespace etflab {

/// Symmetric cross-entropy energy
///   L_alpha(u) = sum_i log(1 + sum_{j != i} exp(alpha (<u_j,u_i> - 1))).
/// Each row is evaluated with a max-shifted log-sum-exp; finite for any alpha >= 0.
double loss_sym(const Configuration& config, double alpha);

/// Asymmetric loss L(u, v) = sum_i log(sum_j exp(<v_j,u_i>) / exp(<v_i,u_i>)).
double loss_asym(const PairConfiguration& pair);

/// n log(1 + (n-1) exp(-n alpha / (n-1))): the minimum of loss_sym over
/// unit vectors, attained exactly at simplex ETFs.
double lower_bound_sym(std::size_t n, double alpha);

/// sum_i log sum_j exp(alpha <u_i,u_j>) with the diagonal; equals loss_sym + n alpha.
double shifted_loss(const Configuration& config, double alpha);

/// n log((1/n) sum_{i,j} exp(alpha <u_i,u_j>)); concavity of log makes this >= shifted_loss.
double jensen_upper(const Configuration& config, double alpha);

/// (1/n^2) sum_{i,j} exp(alpha <u_i,u_j>), diagonal included.
double pair_exp_mean(const Configuration& config, double alpha);

/// sum_{i,j} <u_i,u_j>^2 (diagonal included). Never below max(n, n^2/m).
double frame_potential(const Configuration& config);

/// Mean of exp(alpha <x,y>) for x, y independent and uniform on S^{m-1}:
///   [A(m-1)/A(m)] * int_{-1}^{1} exp(alpha t) (1-t^2)^{(m-3)/2} dt,
/// with A(k) = 2 pi^{k/2} / Gamma(k/2). The integral is evaluated by adaptive
/// Gauss-Legendre after t = sin(theta); throws NumericError on non-convergence.
double uniform_energy(std::size_t m, double alpha);

/// pair_exp_mean - uniform_energy. Nonnegative for every configuration.
double energy_gap(const Configuration& config, double alpha);

/// Second-order small-alpha expansion of shifted_loss:
///   n log n + (alpha/n)|U|^2 + (alpha^2/2n) F - (alpha^2/2n^2) sum_i <u_i,U>^2,
/// where U is the resultant and F the frame potential.
double taylor_order2(const Configuration& config, double alpha);

/// (alpha/n)|U|^2 + (alpha^2/2n) F.
double effective_energy(const Configuration& config, double alpha);

struct EnergyReport {
  double loss_sym;
  double lower_bound;
  double jensen_upper;
  double frame_potential;
  double pair_exp_mean;
  double uniform_energy;
  double gap;
};

EnergyReport energy_report(const Configuration& config, double alpha);

}  // namespace etflab
