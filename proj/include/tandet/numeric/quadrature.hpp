#pragma once

#include <cmath>
#include <cstdio>
#include <vector>

#include "tandet/common.hpp"

namespace tandet::num {

namespace detail {

// Gauss-Kronrod 7-15 abscissae and weights, positive half, center last.
inline constexpr double kGk15Nodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

inline constexpr double kGk15Weights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

// Weights of the embedded 7-point Gauss rule; its nodes are the
// odd-indexed Kronrod nodes plus the center.
inline constexpr double kGauss7Weights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
  double integral;
  double error;
};

template <class F>
Panel gk15_panel(F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double kron = kGk15Weights[7] * fc;
  double gauss = kGauss7Weights[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = h * kGk15Nodes[i];
    const double fsum = f(c - dx) + f(c + dx);
    kron += kGk15Weights[i] * fsum;
    if (i % 2 == 1) gauss += kGauss7Weights[(i - 1) / 2] * fsum;
  }
  return {kron * h, std::abs(kron - gauss) * h};
}

}  // namespace detail

// Adaptive integral of f over [a, b] to absolute tolerance abs_tol.
// Bisects panels whose Kronrod-Gauss discrepancy exceeds the local budget;
// segments are resolved left to right so the accumulation order (and hence
// the result, bit for bit) is reproducible. Throws NumericalError when the
// recursion depth or evaluation budget is exhausted.
template <class F>
double integrate(F&& f, double a, double b, double abs_tol = 1e-10) {
  if (!(b > a)) return 0.0;
  struct Segment {
    double a, b, tol;
    int depth;
  };
  std::vector<Segment> pending;
  pending.push_back({a, b, abs_tol, 0});
  double total = 0.0;
  long evaluations = 0;
  while (!pending.empty()) {
    const Segment seg = pending.back();
    pending.pop_back();
    const detail::Panel panel = detail::gk15_panel(f, seg.a, seg.b);
    evaluations += 15;
    if (panel.error <= seg.tol || panel.error <= 1e-14 * std::abs(panel.integral)) {
      total += panel.integral;
      continue;
    }
    if (seg.depth >= 60 || evaluations > 20'000'000) {
      char msg[160];
      std::snprintf(msg, sizeof msg,
                    "quadrature did not converge on [%.17g, %.17g]: "
                    "error estimate %.3g > tolerance %.3g after %ld evaluations",
                    seg.a, seg.b, panel.error, seg.tol, evaluations);
      throw NumericalError(msg);
    }
    const double mid = 0.5 * (seg.a + seg.b);
    const double half_tol = 0.5 * seg.tol;
    // push right first so the left half is resolved first
    pending.push_back({mid, seg.b, half_tol, seg.depth + 1});
    pending.push_back({seg.a, mid, half_tol, seg.depth + 1});
  }
  return total;
}

}  // namespace tandet::num
