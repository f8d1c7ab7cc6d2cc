#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace etflab {

/// n unit vectors in R^m, stored row-major (point i occupies [i*m, (i+1)*m)).
///
/// Construction normalizes every row whose norm differs from 1 by more than
/// kNormTolerance; rows already within it are kept unchanged. Rows whose norm
/// deviates by more than kRejectTolerance are rejected with ParameterError.
class Configuration {
 public:
  static constexpr double kNormTolerance = 1e-12;
  static constexpr double kRejectTolerance = 1e-6;

  Configuration(std::size_t n, std::size_t m, std::vector<double> coords);

  /// Builds from arbitrary nonzero rows by normalizing each; no deviation check.
  /// Used by samplers and retractions where the raw norm is meaningless.
  static Configuration from_directions(std::size_t n, std::size_t m, std::vector<double> coords);

  std::size_t n() const noexcept { return n_; }
  std::size_t m() const noexcept { return m_; }

  std::span<const double> point(std::size_t i) const noexcept { return {coords_.data() + i * m_, m_}; }
  std::span<const double> data() const noexcept { return coords_; }

  /// Resultant U = sum_i u_i.
  std::vector<double> resultant() const;

  friend bool operator==(const Configuration&, const Configuration&) = default;

 private:
  struct Unchecked {};
  Configuration(Unchecked, std::size_t n, std::size_t m, std::vector<double> coords);

  std::size_t n_;
  std::size_t m_;
  std::vector<double> coords_;
};

/// Aligned (u, v) configurations for the asymmetric loss.
class PairConfiguration {
 public:
  PairConfiguration(Configuration u, Configuration v);

  const Configuration& u() const noexcept { return u_; }
  const Configuration& v() const noexcept { return v_; }
  std::size_t n() const noexcept { return u_.n(); }
  std::size_t m() const noexcept { return u_.m(); }

  friend bool operator==(const PairConfiguration&, const PairConfiguration&) = default;

 private:
  Configuration u_;
  Configuration v_;
};

/// Symmetric n x n matrix of inner products <u_i, u_j>.
class GramMatrix {
 public:
  GramMatrix(std::size_t n, std::vector<double> entries);

  std::size_t n() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return entries_[i * n_ + j]; }
  std::span<const double> entries() const noexcept { return entries_; }

 private:
  std::size_t n_;
  std::vector<double> entries_;
};

double dot(std::span<const double> a, std::span<const double> b) noexcept;

/// i.i.d. uniform points on S^{m-1}: standard normals (mt19937_64) then normalization.
Configuration sample_uniform(std::size_t n, std::size_t m, std::uint64_t seed);

GramMatrix gram(const Configuration& config);

/// Vertices of the regular simplex centred at the origin, built in the first
/// n-1 coordinates and zero-padded to m. Throws InfeasibleDimensionError if m < n-1.
Configuration simplex_etf(std::size_t n, std::size_t m);

/// max_{i != j} |<u_i, u_j> + 1/(n-1)|. Requires n <= m + 1.
double etf_distance(const Configuration& config);

/// Child seed for stream `index` of a master seed (splitmix64 mixing).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept;

}  // namespace etflab
