#pragma once

#include <algorithm>
#include <cstddef>
#include <span>

namespace etflab::detail {

inline double row_dot(const double* a, const double* b, std::size_t m) noexcept {
  double s = 0.0;
  for (std::size_t k = 0; k < m; ++k) s += a[k] * b[k];
  return s;
}

inline void axpy(double a, const double* x, double* y, std::size_t m) noexcept {
  for (std::size_t k = 0; k < m; ++k) y[k] += a * x[k];
}

/// Adds C_0^lambda(t) .. C_L^lambda(t) (L = out.size() - 1) into out, scaled by `weight`.
inline void accumulate_gegenbauer(double lambda, double t, double weight, std::span<double> out) noexcept {
  t = std::clamp(t, -1.0, 1.0);
  double c0 = 1.0;
  double c1 = 2.0 * lambda * t;
  out[0] += weight * c0;
  if (out.size() > 1) out[1] += weight * c1;
  for (std::size_t k = 2; k < out.size(); ++k) {
    const double kd = static_cast<double>(k);
    const double c2 = (2.0 * (kd + lambda - 1.0) * t * c1 - (kd + 2.0 * lambda - 2.0) * c0) / kd;
    out[k] += weight * c2;
    c0 = c1;
    c1 = c2;
  }
}

}  // namespace etflab::detail
