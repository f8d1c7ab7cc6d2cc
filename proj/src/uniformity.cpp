#include "etflab/uniformity.hpp"

#include <cmath>
#include <numbers>

#include <fmt/core.h>

#include "etflab/energy.hpp"
#include "etflab/error.hpp"
#include "etflab/gegenbauer.hpp"
#include "etflab/quadrature.hpp"

namespace etflab {

double mean_resultant(const Configuration& config) {
  const auto u = config.resultant();
  return std::sqrt(dot(u, u)) / static_cast<double>(config.n());
}

UniformityReport uniformity_report(const Configuration& config, std::size_t max_degree) {
  const auto mom = moments(config, max_degree);
  UniformityReport r;
  r.n = config.n();
  r.m = config.m();
  r.mean_resultant = mean_resultant(config);
  const double n = static_cast<double>(config.n());
  r.frame_ratio = frame_potential(config) * static_cast<double>(config.m()) / (n * n);
  for (std::size_t l = 1; l <= max_degree; ++l) r.moments.emplace_back(l, mom[l]);
  return r;
}

namespace {

using Vec3 = std::array<double, 3>;

double dot3(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

/// Orthonormal e1, e2 completing the pole to a right-handed frame.
std::pair<Vec3, Vec3> tangent_frame(const Vec3& p) {
  std::size_t axis = 0;
  for (std::size_t k = 1; k < 3; ++k)
    if (std::abs(p[k]) < std::abs(p[axis])) axis = k;
  Vec3 e1{};
  e1[axis] = 1.0;
  const double c = dot3(e1, p);
  for (std::size_t k = 0; k < 3; ++k) e1[k] -= c * p[k];
  const double r = std::sqrt(dot3(e1, e1));
  for (double& x : e1) x /= r;
  const Vec3 e2{p[1] * e1[2] - p[2] * e1[1], p[2] * e1[0] - p[0] * e1[2], p[0] * e1[1] - p[1] * e1[0]};
  return {e1, e2};
}

/// Density of t = <p, y> under mu_kappa, with respect to dt on [-1, 1].
double polar_density(double kappa, double t) {
  if (kappa == 0.0) return 0.5;
  return kappa * std::exp(kappa * (t - 1.0)) / -std::expm1(-2.0 * kappa);
}

double vmf_energy_fixed(double kappa, double alpha, const Vec3& p, std::size_t nodes) {
  const auto [e1, e2] = tangent_frame(p);
  const QuadratureRule rule = gauss_legendre(nodes);
  const std::size_t azimuths = 2 * nodes;

  // Inner-integral sample points y_{b,c} with their weights.
  std::vector<Vec3> ys;
  std::vector<double> yw;
  ys.reserve(nodes * azimuths);
  yw.reserve(nodes * azimuths);
  for (std::size_t b = 0; b < nodes; ++b) {
    const double t = rule.nodes[b];
    const double r = std::sqrt(std::max(0.0, 1.0 - t * t));
    const double w = rule.weights[b] * polar_density(kappa, t) / static_cast<double>(azimuths);
    for (std::size_t c = 0; c < azimuths; ++c) {
      const double phi = 2.0 * std::numbers::pi * static_cast<double>(c) / static_cast<double>(azimuths);
      const double cp = std::cos(phi);
      const double sp = std::sin(phi);
      ys.push_back({t * p[0] + r * (cp * e1[0] + sp * e2[0]), t * p[1] + r * (cp * e1[1] + sp * e2[1]),
                    t * p[2] + r * (cp * e1[2] + sp * e2[2])});
      yw.push_back(w);
    }
  }

  double energy = 0.0;
  for (std::size_t a = 0; a < nodes; ++a) {
    const double s = rule.nodes[a];
    const double r = std::sqrt(std::max(0.0, 1.0 - s * s));
    const Vec3 x{s * p[0] + r * e1[0], s * p[1] + r * e1[1], s * p[2] + r * e1[2]};
    double inner = 0.0;
    for (std::size_t q = 0; q < ys.size(); ++q) inner += yw[q] * std::exp(alpha * (dot3(x, ys[q]) - 1.0));
    energy += rule.weights[a] * polar_density(kappa, s) * std::log(inner);
  }
  return energy;
}

}  // namespace

double vmf_energy(double kappa, double alpha, const std::array<double, 3>& pole, std::size_t nodes) {
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) throw ParameterError(fmt::format("kappa must be >= 0, got {}", kappa));
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw ParameterError(fmt::format("alpha must be >= 0, got {}", alpha));
  if (nodes < 32) throw ParameterError(fmt::format("vmf_energy needs nodes >= 32, got {}", nodes));
  const double pn = std::sqrt(dot3(pole, pole));
  if (std::abs(pn - 1.0) > Configuration::kRejectTolerance) throw ParameterError("vMF pole must be a unit vector");
  const Vec3 p{pole[0] / pn, pole[1] / pn, pole[2] / pn};

  constexpr std::size_t max_doublings = 3;
  double prev = vmf_energy_fixed(kappa, alpha, p, nodes);
  for (std::size_t k = 0; k < max_doublings; ++k) {
    nodes *= 2;
    const double cur = vmf_energy_fixed(kappa, alpha, p, nodes);
    if (std::abs(cur - prev) < 1e-10 * std::max(1.0, std::abs(cur))) return cur;
    prev = cur;
  }
  throw NumericError(fmt::format("vMF energy quadrature did not converge (kappa={}, alpha={})", kappa, alpha));
}

}  // namespace etflab
