#pragma once

#include <stdexcept>

namespace tandet {

// Thrown when an iterative numeric routine (adaptive quadrature, root
// bracketing) cannot reach its requested tolerance. The message carries the
// interval and the achieved error estimate.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double width() const { return hi - lo; }
};

}  // namespace tandet
