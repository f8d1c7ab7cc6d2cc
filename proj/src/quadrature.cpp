#include "etflab/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include <fmt/core.h>

#include "etflab/error.hpp"

namespace etflab {

namespace {

/// P_n(x) and P_n'(x) by the three-term recurrence.
std::pair<double, double> legendre_and_derivative(std::size_t n, double x) {
  double p0 = 1.0;
  double p1 = x;
  for (std::size_t k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
    p0 = p1;
    p1 = p2;
  }
  return {p1, static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0)};
}

}  // namespace

QuadratureRule gauss_legendre(std::size_t n) {
  if (n == 0) throw ParameterError("Gauss-Legendre rule needs at least one node");
  QuadratureRule rule{std::vector<double>(n), std::vector<double>(n)};
  if (n == 1) {
    rule.nodes[0] = 0.0;
    rule.weights[0] = 2.0;
    return rule;
  }
  for (std::size_t i = 0; i < n / 2; ++i) {
    // Tricomi-style initial guess for the i-th largest root, then Newton.
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, dp] = legendre_and_derivative(n, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) <= 1e-16) break;
    }
    const double dp = legendre_and_derivative(n, x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) {
    rule.nodes[n / 2] = 0.0;
    const double dp = legendre_and_derivative(n, 0.0).second;
    rule.weights[n / 2] = 2.0 / (dp * dp);
  }
  return rule;
}

namespace {

double apply_rule(const QuadratureRule& rule, const std::function<double(double)>& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double s = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return half * s;
}

}  // namespace

AdaptiveResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                  const AdaptiveOptions& opts) {
  std::size_t nodes = opts.base_nodes;
  double prev = apply_rule(gauss_legendre(nodes), f, a, b);
  for (std::size_t d = 0; d < opts.max_doublings; ++d) {
    nodes *= 2;
    const double cur = apply_rule(gauss_legendre(nodes), f, a, b);
    if (!std::isfinite(cur)) break;
    if (std::abs(cur - prev) < opts.tolerance * std::max(1.0, std::abs(cur))) return {cur, nodes};
    prev = cur;
  }
  throw NumericError(fmt::format("Gauss-Legendre quadrature did not converge after {} doublings ({} nodes)",
                                 opts.max_doublings, nodes));
}

}  // namespace etflab
