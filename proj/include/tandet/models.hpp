#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tandet/common.hpp"
#include "tandet/numeric/normal.hpp"
#include "tandet/random.hpp"

namespace tandet {

enum class ModelFamily {
  GaussianEqualVariance,  // params {mean, sigma}; sigma shared by both classes
  GaussianGeneral,        // params {mean, sigma}
  TwoComponentMixture,    // params {weight_a, mean_a, sigma_a, mean_b, sigma_b}
};

// Class-conditional density pair (f(x|Y=0), f(x|Y=1)) for one scalar
// feature. Immutable after construction and safe to share across threads;
// sampling takes caller-supplied randomness.
class ConditionalModel {
 public:
  ConditionalModel(ModelFamily family, std::vector<double> params0,
                   std::vector<double> params1)
      : family_(family),
        params0_(std::move(params0)),
        params1_(std::move(params1)) {
    validate_params(params0_, "params0");
    validate_params(params1_, "params1");
    if (family_ == ModelFamily::GaussianEqualVariance &&
        params0_[1] != params1_[1]) {
      throw std::invalid_argument(
          "ConditionalModel: GaussianEqualVariance requires equal sigmas");
    }
  }

  ModelFamily family() const { return family_; }

  const std::vector<double>& params(int y) const {
    return y ? params1_ : params0_;
  }

  // Truncated support shared by every quadrature in the library. The cut at
  // 12 sigma beyond the extreme means leaves Gaussian tail mass below 1e-30.
  Interval support() const {
    double mean_lo = std::numeric_limits<double>::infinity();
    double mean_hi = -std::numeric_limits<double>::infinity();
    double sigma_max = 0.0;
    for (const auto* pr : {&params0_, &params1_}) {
      if (family_ == ModelFamily::TwoComponentMixture) {
        for (int c : {1, 3}) {
          mean_lo = std::min(mean_lo, (*pr)[c]);
          mean_hi = std::max(mean_hi, (*pr)[c]);
          sigma_max = std::max(sigma_max, (*pr)[c + 1]);
        }
      } else {
        mean_lo = std::min(mean_lo, (*pr)[0]);
        mean_hi = std::max(mean_hi, (*pr)[0]);
        sigma_max = std::max(sigma_max, (*pr)[1]);
      }
    }
    return {mean_lo - 12.0 * sigma_max, mean_hi + 12.0 * sigma_max};
  }

  bool identical_classes() const { return params0_ == params1_; }

 private:
  void validate_params(const std::vector<double>& pr, const char* which) const {
    const std::size_t expected =
        family_ == ModelFamily::TwoComponentMixture ? 5u : 2u;
    if (pr.size() != expected) {
      throw std::invalid_argument(std::string("ConditionalModel: ") + which +
                                  " must have " + std::to_string(expected) +
                                  " entries for this family");
    }
    for (double v : pr) {
      if (!std::isfinite(v)) {
        throw std::invalid_argument(std::string("ConditionalModel: ") + which +
                                    " must be finite");
      }
    }
    if (family_ == ModelFamily::TwoComponentMixture) {
      if (!(pr[0] >= 0.0 && pr[0] <= 1.0)) {
        throw std::invalid_argument(
            std::string("ConditionalModel: ") + which +
            " mixture weight must lie in [0,1]");
      }
      if (!(pr[2] > 0.0) || !(pr[4] > 0.0)) {
        throw std::invalid_argument(std::string("ConditionalModel: ") + which +
                                    " sigmas must be positive");
      }
    } else if (!(pr[1] > 0.0)) {
      throw std::invalid_argument(std::string("ConditionalModel: ") + which +
                                  " sigma must be positive");
    }
  }

  ModelFamily family_;
  std::vector<double> params0_;
  std::vector<double> params1_;
};

namespace detail {
inline void check_label(int y) {
  if (y != 0 && y != 1) {
    throw std::invalid_argument("class label must be 0 or 1");
  }
}
}  // namespace detail

inline double pdf(const ConditionalModel& m, int y, double x) {
  detail::check_label(y);
  const auto& pr = m.params(y);
  switch (m.family()) {
    case ModelFamily::GaussianEqualVariance:
    case ModelFamily::GaussianGeneral:
      return num::normal_pdf(x, pr[0], pr[1]);
    case ModelFamily::TwoComponentMixture:
      return pr[0] * num::normal_pdf(x, pr[1], pr[2]) +
             (1.0 - pr[0]) * num::normal_pdf(x, pr[3], pr[4]);
  }
  return 0.0;
}

inline double cdf(const ConditionalModel& m, int y, double x) {
  detail::check_label(y);
  const auto& pr = m.params(y);
  switch (m.family()) {
    case ModelFamily::GaussianEqualVariance:
    case ModelFamily::GaussianGeneral:
      return num::normal_cdf(x, pr[0], pr[1]);
    case ModelFamily::TwoComponentMixture:
      return pr[0] * num::normal_cdf(x, pr[1], pr[2]) +
             (1.0 - pr[0]) * num::normal_cdf(x, pr[3], pr[4]);
  }
  return 0.0;
}

inline double sample(const ConditionalModel& m, int y, Rng& rng) {
  detail::check_label(y);
  const auto& pr = m.params(y);
  switch (m.family()) {
    case ModelFamily::GaussianEqualVariance:
    case ModelFamily::GaussianGeneral:
      return pr[0] + pr[1] * rng.gaussian();
    case ModelFamily::TwoComponentMixture:
      return rng.uniform01() < pr[0] ? pr[1] + pr[2] * rng.gaussian()
                                     : pr[3] + pr[4] * rng.gaussian();
  }
  return 0.0;
}

// f(x|Y=1) / f(x|Y=0); +inf when only the denominator vanishes. A 0/0 point
// yields 1 and raises *zero_over_zero — such points carry no probability
// mass under either class, so integrators stay total.
inline double likelihood_ratio(const ConditionalModel& m, double x,
                               bool* zero_over_zero = nullptr) {
  if (zero_over_zero) *zero_over_zero = false;
  const double numer = pdf(m, 1, x);
  const double denom = pdf(m, 0, x);
  if (denom > 0.0) return numer / denom;
  if (numer > 0.0) return std::numeric_limits<double>::infinity();
  if (zero_over_zero) *zero_over_zero = true;
  return 1.0;
}

// lr/(1+lr) in [0,1]: the strictly monotone squashing of the ratio that the
// uniform quantizer cuts. Maps lr=+inf to 1.
inline double posterior_stat(const ConditionalModel& m, double x) {
  const double lr = likelihood_ratio(m, x);
  if (std::isinf(lr)) return 1.0;
  return lr / (1.0 + lr);
}

// True when x -> lr(x) is strictly monotone with a closed-form inverse
// (equal-variance Gaussians with distinct means).
inline bool has_monotone_lr(const ConditionalModel& m) {
  return m.family() == ModelFamily::GaussianEqualVariance &&
         m.params(0)[0] != m.params(1)[0];
}

inline bool lr_increasing(const ConditionalModel& m) {
  return m.params(1)[0] > m.params(0)[0];
}

// Inverse of the likelihood ratio for monotone families:
// x = sigma^2 log(lr) / (mu1 - mu0) + (mu0 + mu1) / 2.
inline double x_from_lr(const ConditionalModel& m, double lr) {
  const double mu0 = m.params(0)[0];
  const double mu1 = m.params(1)[0];
  const double sigma = m.params(0)[1];
  return sigma * sigma * std::log(lr) / (mu1 - mu0) + 0.5 * (mu0 + mu1);
}

}  // namespace tandet
