#pragma once

#include <cmath>

namespace tandet::num {

inline double normal_pdf(double x, double mean = 0.0, double sigma = 1.0) {
  constexpr double inv_sqrt_2pi = 0.39894228040143267794;
  const double z = (x - mean) / sigma;
  return inv_sqrt_2pi / sigma * std::exp(-0.5 * z * z);
}

inline double normal_cdf(double x, double mean = 0.0, double sigma = 1.0) {
  constexpr double inv_sqrt2 = 0.70710678118654752440;
  return 0.5 * std::erfc(-(x - mean) / sigma * inv_sqrt2);
}

}  // namespace tandet::num
