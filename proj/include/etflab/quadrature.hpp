#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace etflab {

/// Nodes and weights of an n-point Gauss-Legendre rule on [-1, 1].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

QuadratureRule gauss_legendre(std::size_t n);

struct AdaptiveOptions {
  std::size_t base_nodes = 64;
  std::size_t max_doublings = 4;
  /// Converged when |I_2N - I_N| < tolerance * max(1, |I_2N|).
  double tolerance = 1e-12;
};

struct AdaptiveResult {
  double value;
  std::size_t nodes;
};

/// Gauss-Legendre on [a, b], doubling the node count until two successive
/// estimates agree. Throws NumericError after max_doublings without agreement.
AdaptiveResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                  const AdaptiveOptions& opts = {});

}  // namespace etflab
