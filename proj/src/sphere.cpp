#include "etflab/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include <fmt/core.h>

#include "etflab/error.hpp"

namespace etflab {

namespace {

void check_shape(std::size_t n, std::size_t m, std::size_t size) {
  if (n < 2) throw ParameterError(fmt::format("configuration needs n >= 2 points, got {}", n));
  if (m < 2) throw ParameterError(fmt::format("configuration needs dimension m >= 2, got {}", m));
  if (size != n * m)
    throw ParameterError(fmt::format("expected {} coordinates for n={}, m={}, got {}", n * m, n, m, size));
}

double row_norm(const double* row, std::size_t m) {
  double s = 0.0;
  for (std::size_t k = 0; k < m; ++k) s += row[k] * row[k];
  return std::sqrt(s);
}

std::vector<double> checked_unit_rows(std::size_t n, std::size_t m, std::vector<double> coords) {
  check_shape(n, m, coords.size());
  for (std::size_t i = 0; i < n; ++i) {
    const double r = row_norm(coords.data() + i * m, m);
    if (!(std::abs(r - 1.0) <= Configuration::kRejectTolerance))
      throw ParameterError(fmt::format("point {} has norm {:.17g}; expected unit vectors", i, r));
  }
  return coords;
}

}  // namespace

Configuration::Configuration(Unchecked, std::size_t n, std::size_t m, std::vector<double> coords)
    : n_(n), m_(m), coords_(std::move(coords)) {
  for (std::size_t i = 0; i < n_; ++i) {
    double* row = coords_.data() + i * m_;
    const double r = row_norm(row, m_);
    if (!(r > 0.0) || !std::isfinite(r)) throw ParameterError(fmt::format("point {} has zero or non-finite norm", i));
    if (std::abs(r - 1.0) <= kNormTolerance) continue;
    for (std::size_t k = 0; k < m_; ++k) row[k] /= r;
  }
}

Configuration::Configuration(std::size_t n, std::size_t m, std::vector<double> coords)
    : Configuration(Unchecked{}, n, m, checked_unit_rows(n, m, std::move(coords))) {}

Configuration Configuration::from_directions(std::size_t n, std::size_t m, std::vector<double> coords) {
  check_shape(n, m, coords.size());
  return Configuration(Unchecked{}, n, m, std::move(coords));
}

std::vector<double> Configuration::resultant() const {
  std::vector<double> u(m_, 0.0);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t k = 0; k < m_; ++k) u[k] += coords_[i * m_ + k];
  return u;
}

PairConfiguration::PairConfiguration(Configuration u, Configuration v) : u_(std::move(u)), v_(std::move(v)) {
  if (u_.n() != v_.n() || u_.m() != v_.m())
    throw ParameterError(fmt::format("pair shape mismatch: u is {}x{}, v is {}x{}", u_.n(), u_.m(), v_.n(), v_.m()));
}

GramMatrix::GramMatrix(std::size_t n, std::vector<double> entries) : n_(n), entries_(std::move(entries)) {
  if (entries_.size() != n_ * n_) throw ParameterError("gram matrix must be n x n");
  constexpr double tol = 1e-10;
  for (std::size_t i = 0; i < n_; ++i) {
    if (std::abs(entries_[i * n_ + i] - 1.0) > tol) throw ParameterError("gram diagonal must be 1");
    for (std::size_t j = 0; j < n_; ++j) {
      const double g = entries_[i * n_ + j];
      if (g != entries_[j * n_ + i]) throw ParameterError("gram matrix must be symmetric");
      if (!(std::abs(g) <= 1.0 + tol)) throw ParameterError("gram entry outside [-1, 1]");
    }
  }
}

double dot(std::span<const double> a, std::span<const double> b) noexcept {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
  auto mix = [](std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  };
  return mix(mix(master) ^ (index + 1) * 0xD1B54A32D192ED03ULL);
}

Configuration sample_uniform(std::size_t n, std::size_t m, std::uint64_t seed) {
  check_shape(n, m, n * m);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> coords(n * m);
  for (std::size_t i = 0; i < n; ++i) {
    // Redraw the (measure-zero) all-zero row rather than fail.
    double r = 0.0;
    while (r == 0.0) {
      for (std::size_t k = 0; k < m; ++k) coords[i * m + k] = normal(rng);
      r = row_norm(coords.data() + i * m, m);
    }
  }
  return Configuration::from_directions(n, m, std::move(coords));
}

GramMatrix gram(const Configuration& config) {
  const std::size_t n = config.n();
  std::vector<double> g(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    g[i * n + i] = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = std::clamp(dot(config.point(i), config.point(j)), -1.0, 1.0);
      g[i * n + j] = v;
      g[j * n + i] = v;
    }
  }
  return GramMatrix(n, std::move(g));
}

Configuration simplex_etf(std::size_t n, std::size_t m) {
  if (n < 2 || m < 2) throw ParameterError(fmt::format("simplex_etf needs n >= 2, m >= 2 (got n={}, m={})", n, m));
  if (m + 1 < n)
    throw InfeasibleDimensionError(
        fmt::format("a simplex ETF of {} points needs dimension >= {}, got {}", n, n - 1, m));
  // Helmert basis of the hyperplane orthogonal to (1,...,1): h_k has k leading
  // entries 1 followed by -k, scaled by 1/sqrt(k(k+1)). Vertex i is the
  // projection of e_i, rescaled by sqrt(n/(n-1)) to unit length.
  const double scale = std::sqrt(static_cast<double>(n) / static_cast<double>(n - 1));
  std::vector<double> coords(n * m, 0.0);
  for (std::size_t k = 1; k < n; ++k) {
    const double h = 1.0 / std::sqrt(static_cast<double>(k * (k + 1)));
    for (std::size_t i = 0; i < k; ++i) coords[i * m + (k - 1)] = scale * h;
    coords[k * m + (k - 1)] = -scale * h * static_cast<double>(k);
  }
  return Configuration::from_directions(n, m, std::move(coords));
}

double etf_distance(const Configuration& config) {
  const std::size_t n = config.n();
  if (n > config.m() + 1)
    throw InfeasibleDimensionError(
        fmt::format("etf_distance undefined: n={} exceeds m+1={}", n, config.m() + 1));
  const double target = -1.0 / static_cast<double>(n - 1);
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      worst = std::max(worst, std::abs(dot(config.point(i), config.point(j)) - target));
  return worst;
}

}  // namespace etflab
