#pragma once

#include <cmath>
#include <vector>

namespace tandet::num {

// Bisection on a bracket with opposite signs at the ends.
template <class F>
double bisect(F&& f, double a, double b, double fa, double fb,
              int max_iter = 200) {
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  for (int i = 0;
       i < max_iter && b - a > 1e-15 * (std::abs(a) + std::abs(b) + 1.0);
       ++i) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    if (fm == 0.0) return m;
    if ((fa < 0.0) != (fm < 0.0)) {
      b = m;
      fb = fm;
    } else {
      a = m;
      fa = fm;
    }
  }
  return 0.5 * (a + b);
}

// Sign-change roots of f on [lo, hi]: uniform scan followed by bisection of
// each bracket. Crossings closer together than the scan step can be missed.
template <class F>
std::vector<double> find_roots(F&& f, double lo, double hi, int grid_n = 2000) {
  std::vector<double> roots;
  double prev_x = lo;
  double prev_f = f(lo);
  for (int i = 1; i <= grid_n; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / grid_n;
    const double fx = f(x);
    if (prev_f == 0.0) {
      roots.push_back(prev_x);
    } else if (fx != 0.0 && (prev_f < 0.0) != (fx < 0.0)) {
      roots.push_back(bisect(f, prev_x, x, prev_f, fx));
    }
    prev_x = x;
    prev_f = fx;
  }
  if (prev_f == 0.0) roots.push_back(prev_x);
  return roots;
}

}  // namespace tandet::num
