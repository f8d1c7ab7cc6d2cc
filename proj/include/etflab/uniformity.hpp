#pragma once

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

#include "etflab/sphere.hpp"

namespace etflab {

/// |sum_i u_i| / n, in [0, 1].
double mean_resultant(const Configuration& config);

/// Low-order summary of the empirical measure (1/n) sum_i delta_{u_i}.
struct UniformityReport {
  std::size_t n;
  std::size_t m;
  double mean_resultant;
  /// frame_potential * m / n^2; equals 1 exactly for tight frames.
  double frame_ratio;
  /// (l, M_l) for l = 1..L.
  std::vector<std::pair<std::size_t, double>> moments;
};

/// Requires m >= 3 (the moment machinery needs lambda > 0).
UniformityReport uniformity_report(const Configuration& config, std::size_t max_degree);

/// Energy of the von Mises-Fisher measure mu_kappa ~ exp(kappa <p,y>) on S^2:
///   int log( int exp(alpha(<x,y> - 1)) mu(dy) ) mu(dx).
/// Tensor-product quadrature: Gauss-Legendre in the polar cosine around `pole`
/// and the trapezoid rule in azimuth (2*nodes points) for the inner integral;
/// by zonal symmetry the outer integral is one-dimensional in <p,x>. The node
/// count is doubled until two estimates agree to 1e-10; NumericError after
/// three doublings.
double vmf_energy(double kappa, double alpha, const std::array<double, 3>& pole, std::size_t nodes = 128);

}  // namespace etflab
