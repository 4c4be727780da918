#pragma once

#include <cmath>

namespace tandet::num {

struct ScalarMin {
  double x;
  double fx;
  int iterations;
};

// Golden-section search for the minimum of a unimodal f on [lo, hi].
// Shrinks the bracket until it is narrower than x_tol.
template <class F>
ScalarMin golden_section_min(F&& f, double lo, double hi, double x_tol,
                             int max_iter = 300) {
  constexpr double invphi = 0.61803398874989484820;
  double a = lo, b = hi;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  int it = 0;
  while (b - a > x_tol && it < max_iter) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = f(x2);
    }
    ++it;
  }
  const double xm = 0.5 * (a + b);
  return {xm, f(xm), it};
}

// Exhaustive fixed-step scan. The paranoid cross-check for the
// golden-section path; iterations reports the evaluation count.
template <class F>
ScalarMin grid_min(F&& f, double lo, double hi, double step) {
  ScalarMin best{lo, f(lo), 1};
  const long n = static_cast<long>(std::ceil((hi - lo) / step));
  for (long i = 1; i <= n; ++i) {
    double x = lo + static_cast<double>(i) * step;
    if (x > hi) x = hi;
    const double fx = f(x);
    if (fx < best.fx) {
      best.x = x;
      best.fx = fx;
    }
  }
  best.iterations = static_cast<int>(n + 1);
  return best;
}

}  // namespace tandet::num
