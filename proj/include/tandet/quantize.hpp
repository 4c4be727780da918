#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tandet/common.hpp"
#include "tandet/models.hpp"
#include "tandet/numeric/minimize.hpp"
#include "tandet/numeric/quadrature.hpp"
#include "tandet/numeric/roots.hpp"
#include "tandet/random.hpp"

namespace tandet {

enum class QuantizerDomain { LikelihoodRatio, PosteriorStat };

// k-level partition of a scalar statistic by k-1 strictly increasing
// thresholds b_1 < ... < b_{k-1}. Cells are lower-closed and upper-open:
// symbol 1 covers (-inf, b_1), symbol j covers [b_{j-1}, b_j), and the last
// cell [b_{k-1}, +inf) is closed at the top.
struct QuantizerSpec {
  int k;
  QuantizerDomain domain;
  std::vector<double> thresholds;

  QuantizerSpec(int k_, QuantizerDomain domain_, std::vector<double> ths)
      : k(k_), domain(domain_), thresholds(std::move(ths)) {
    if (k < 1) throw std::invalid_argument("QuantizerSpec: k must be >= 1");
    if (thresholds.size() != static_cast<std::size_t>(k - 1)) {
      throw std::invalid_argument(
          "QuantizerSpec: need exactly k-1 thresholds");
    }
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
      if (!std::isfinite(thresholds[i])) {
        throw std::invalid_argument("QuantizerSpec: thresholds must be finite");
      }
      if (i > 0 && !(thresholds[i - 1] < thresholds[i])) {
        throw std::invalid_argument(
            "QuantizerSpec: thresholds must be strictly increasing");
      }
    }
    if (domain == QuantizerDomain::PosteriorStat) {
      for (double b : thresholds) {
        if (!(b > 0.0 && b < 1.0)) {
          throw std::invalid_argument(
              "QuantizerSpec: posterior thresholds must lie in (0,1)");
        }
      }
    } else {
      for (double b : thresholds) {
        if (!(b > 0.0)) {
          throw std::invalid_argument(
              "QuantizerSpec: likelihood-ratio thresholds must be positive");
        }
      }
    }
  }
};

inline int apply(const QuantizerSpec& spec, double statistic_value) {
  const auto it = std::upper_bound(spec.thresholds.begin(),
                                   spec.thresholds.end(), statistic_value);
  return static_cast<int>(it - spec.thresholds.begin()) + 1;
}

inline double statistic(const ConditionalModel& m, QuantizerDomain domain,
                        double x) {
  return domain == QuantizerDomain::LikelihoodRatio ? likelihood_ratio(m, x)
                                                    : posterior_stat(m, x);
}

// Uniform k-cell partition of the posterior statistic: thresholds j/k.
inline QuantizerSpec uniform_posterior_quantizer(int k) {
  if (k < 1) {
    throw std::invalid_argument("uniform_posterior_quantizer: k must be >= 1");
  }
  std::vector<double> ths(static_cast<std::size_t>(k - 1));
  for (int j = 1; j < k; ++j) {
    ths[j - 1] = static_cast<double>(j) / k;
  }
  return QuantizerSpec(k, QuantizerDomain::PosteriorStat, std::move(ths));
}

// Paired conditional PMFs of a quantizer symbol: p_j = P(U=j | Y=1),
// q_j = P(U=j | Y=0).
struct DiscreteCondPMF {
  std::vector<double> p;
  std::vector<double> q;

  DiscreteCondPMF(std::vector<double> p_, std::vector<double> q_)
      : p(std::move(p_)), q(std::move(q_)) {
    if (p.empty() || p.size() != q.size()) {
      throw std::invalid_argument(
          "DiscreteCondPMF: p and q must be nonempty and the same length");
    }
    for (const auto* v : {&p, &q}) {
      double sum = 0.0;
      for (double e : *v) {
        if (!(e >= 0.0) || e > 1.0 + 1e-12) {
          throw std::invalid_argument(
              "DiscreteCondPMF: entries must lie in [0,1]");
        }
        sum += e;
      }
      if (std::abs(sum - 1.0) > 1e-8) {
        throw std::invalid_argument("DiscreteCondPMF: entries must sum to 1");
      }
    }
  }

  int k() const { return static_cast<int>(p.size()); }
};

// P(statistic in cell j | Y=y) for every cell. Monotone-ratio families go
// through CDF differences on the closed-form cell pre-images; everything
// else partitions the truncated support at the statistic-threshold
// crossings and integrates each class density piece by piece.
inline DiscreteCondPMF cell_probabilities(const ConditionalModel& model,
                                          const QuantizerSpec& spec,
                                          double abs_tol = 1e-10) {
  const int k = spec.k;
  std::vector<double> p(static_cast<std::size_t>(k), 0.0);
  std::vector<double> q(static_cast<std::size_t>(k), 0.0);

  if (model.identical_classes()) {
    // lr is identically 1: all mass lands in the cell containing the
    // constant statistic
    const double s =
        spec.domain == QuantizerDomain::LikelihoodRatio ? 1.0 : 0.5;
    const int j = apply(spec, s);
    p[j - 1] = 1.0;
    q[j - 1] = 1.0;
    return DiscreteCondPMF(std::move(p), std::move(q));
  }

  if (has_monotone_lr(model)) {
    const bool inc = lr_increasing(model);
    std::vector<double> xs(static_cast<std::size_t>(k - 1));
    for (int j = 0; j < k - 1; ++j) {
      const double b = spec.thresholds[static_cast<std::size_t>(j)];
      const double lr =
          spec.domain == QuantizerDomain::PosteriorStat ? b / (1.0 - b) : b;
      xs[static_cast<std::size_t>(j)] = x_from_lr(model, lr);
    }
    constexpr double inf = std::numeric_limits<double>::infinity();
    for (int j = 0; j < k; ++j) {
      double x_lo, x_hi;
      if (inc) {
        x_lo = j == 0 ? -inf : xs[static_cast<std::size_t>(j - 1)];
        x_hi = j == k - 1 ? inf : xs[static_cast<std::size_t>(j)];
      } else {
        x_lo = j == k - 1 ? -inf : xs[static_cast<std::size_t>(j)];
        x_hi = j == 0 ? inf : xs[static_cast<std::size_t>(j - 1)];
      }
      p[static_cast<std::size_t>(j)] =
          std::max(0.0, cdf(model, 1, x_hi) - cdf(model, 1, x_lo));
      q[static_cast<std::size_t>(j)] =
          std::max(0.0, cdf(model, 0, x_hi) - cdf(model, 0, x_lo));
    }
    return DiscreteCondPMF(std::move(p), std::move(q));
  }

  const Interval sup = model.support();
  std::vector<double> cuts{sup.lo, sup.hi};
  for (double b : spec.thresholds) {
    auto crossing = [&](double x) {
      return statistic(model, spec.domain, x) - b;
    };
    for (double r : num::find_roots(crossing, sup.lo, sup.hi, 2000)) {
      cuts.push_back(r);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  const double merge_tol = sup.width() * 1e-14;
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [&](double a, double b) {
                           return std::abs(b - a) <= merge_tol;
                         }),
             cuts.end());
  const std::size_t pieces = cuts.size() - 1;
  const double piece_tol =
      std::min(abs_tol / static_cast<double>(pieces), 1e-13);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i];
    const double b = cuts[i + 1];
    if (!(b > a)) continue;
    const int cell = apply(spec, statistic(model, spec.domain, 0.5 * (a + b)));
    p[static_cast<std::size_t>(cell - 1)] += num::integrate(
        [&](double x) { return pdf(model, 1, x); }, a, b, piece_tol);
    q[static_cast<std::size_t>(cell - 1)] += num::integrate(
        [&](double x) { return pdf(model, 0, x); }, a, b, piece_tol);
  }
  for (double& v : p) v = std::max(v, 0.0);
  for (double& v : q) v = std::max(v, 0.0);
  return DiscreteCondPMF(std::move(p), std::move(q));
}

// Splits every cell into rho nested subcells, keeping the original
// thresholds bit-exact so the refined partition determines the coarse one.
// Finite cells split uniformly in the domain coordinate; the unbounded top
// cell of a ratio-domain spec splits uniformly in the posterior coordinate.
inline QuantizerSpec refine(const QuantizerSpec& spec, int rho) {
  if (rho < 2) throw std::invalid_argument("refine: rho must be >= 2");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(spec.k) * rho - 1);
  if (spec.domain == QuantizerDomain::PosteriorStat) {
    std::vector<double> bounds;
    bounds.reserve(static_cast<std::size_t>(spec.k) + 1);
    bounds.push_back(0.0);
    bounds.insert(bounds.end(), spec.thresholds.begin(),
                  spec.thresholds.end());
    bounds.push_back(1.0);
    for (std::size_t c = 0; c + 1 < bounds.size(); ++c) {
      if (c > 0) out.push_back(bounds[c]);
      for (int m = 1; m < rho; ++m) {
        out.push_back(bounds[c] + (bounds[c + 1] - bounds[c]) * m / rho);
      }
    }
  } else {
    std::vector<double> bounds;
    bounds.reserve(static_cast<std::size_t>(spec.k));
    bounds.push_back(0.0);
    bounds.insert(bounds.end(), spec.thresholds.begin(),
                  spec.thresholds.end());
    for (std::size_t c = 0; c + 1 < bounds.size(); ++c) {
      if (c > 0) out.push_back(bounds[c]);
      for (int m = 1; m < rho; ++m) {
        out.push_back(bounds[c] + (bounds[c + 1] - bounds[c]) * m / rho);
      }
    }
    out.push_back(bounds.back());
    const double s_top = bounds.back() / (1.0 + bounds.back());
    for (int m = 1; m < rho; ++m) {
      const double s = s_top + (1.0 - s_top) * m / rho;
      out.push_back(s / (1.0 - s));
    }
  }
  return QuantizerSpec(spec.k * rho, spec.domain, std::move(out));
}

// Aggregates consecutive blocks of rho symbols: out_r = sum of the rho fine
// entries inside coarse cell r. Inverse of refine at the PMF level.
inline DiscreteCondPMF coarsen_pmf(const DiscreteCondPMF& fine, int rho) {
  if (rho < 1) throw std::invalid_argument("coarsen_pmf: rho must be >= 1");
  if (fine.k() % rho != 0) {
    throw std::invalid_argument(
        "coarsen_pmf: PMF length must be divisible by rho");
  }
  const int k = fine.k() / rho;
  std::vector<double> p(static_cast<std::size_t>(k), 0.0);
  std::vector<double> q(static_cast<std::size_t>(k), 0.0);
  for (int r = 0; r < k; ++r) {
    for (int i = 0; i < rho; ++i) {
      p[static_cast<std::size_t>(r)] +=
          fine.p[static_cast<std::size_t>(r * rho + i)];
      q[static_cast<std::size_t>(r)] +=
          fine.q[static_cast<std::size_t>(r * rho + i)];
    }
  }
  return DiscreteCondPMF(std::move(p), std::move(q));
}

struct OptimizeOptions {
  int max_sweeps = 100;
  double sweep_tol = 1e-10;   // stop when a full sweep improves less
  double coord_tol = 1e-10;   // golden-section bracket width per threshold
  std::uint64_t seed = 20260809;  // randomized restart
};

struct ThresholdOptimization {
  QuantizerSpec spec;
  double objective;  // maximized value at spec
  std::vector<double> sweep_objectives;  // after each sweep; nondecreasing
  int sweeps;
  bool non_learnable;
};

namespace detail {

inline std::vector<double> uniform_thresholds(int k) {
  std::vector<double> t(static_cast<std::size_t>(k - 1));
  for (int j = 1; j < k; ++j) t[j - 1] = static_cast<double>(j) / k;
  return t;
}

// Start that equalizes the balanced-mixture mass (p+q)/2 across cells,
// read off a fine uniform posterior probe.
inline std::vector<double> mass_matched_thresholds(const DiscreteCondPMF& fine,
                                                   int k) {
  const int n = fine.k();
  std::vector<double> ths;
  ths.reserve(static_cast<std::size_t>(k - 1));
  double cum = 0.0;
  int cell = 0;
  auto mass = [&](int c) {
    return 0.5 * (fine.p[static_cast<std::size_t>(c)] +
                  fine.q[static_cast<std::size_t>(c)]);
  };
  for (int r = 1; r < k; ++r) {
    const double target = static_cast<double>(r) / k;
    while (cell < n - 1 && cum + mass(cell) < target) {
      cum += mass(cell);
      ++cell;
    }
    const double m = mass(cell);
    const double frac = m > 0.0 ? std::clamp((target - cum) / m, 0.0, 1.0) : 0.5;
    ths.push_back((cell + frac) / n);
  }
  // sanitize into a strictly increasing interior sequence
  double prev = 0.0;
  for (double& t : ths) {
    t = std::clamp(t, 1e-9, 1.0 - 1e-9);
    if (t <= prev) t = prev + 1e-9;
    prev = t;
  }
  if (ths.back() >= 1.0) return uniform_thresholds(k);
  return ths;
}

inline std::vector<double> random_thresholds(int k, std::uint64_t seed) {
  Rng rng(seed);
  for (int attempt = 0; attempt < 60; ++attempt) {
    std::vector<double> t(static_cast<std::size_t>(k - 1));
    for (double& v : t) v = 0.02 + 0.96 * rng.uniform01();
    std::sort(t.begin(), t.end());
    double min_gap = t.front() > 0.0 ? 1.0 : 0.0;
    for (std::size_t i = 1; i < t.size(); ++i) {
      min_gap = std::min(min_gap, t[i] - t[i - 1]);
    }
    if (t.size() == 1 || min_gap > 1e-3) return t;
  }
  return uniform_thresholds(k);
}

}  // namespace detail

// Cyclic coordinate ascent on posterior-domain thresholds: each threshold is
// re-optimized by golden-section search between its neighbors, sweeping
// until a full pass improves the objective by less than sweep_tol. Restarts
// from uniform, mass-matched and randomized thresholds; the best run wins.
// A non-learnable model (p = q on a fine probe partition) short-circuits to
// the uniform quantizer with the non_learnable flag set.
inline ThresholdOptimization optimize_thresholds(
    const ConditionalModel& model, int k,
    const std::function<double(const QuantizerSpec&)>& objective,
    const OptimizeOptions& opts = {}) {
  if (k < 2) {
    throw std::invalid_argument("optimize_thresholds: k must be >= 2");
  }
  const DiscreteCondPMF probe =
      cell_probabilities(model, uniform_posterior_quantizer(128));
  double probe_gap = 0.0;
  for (int j = 0; j < probe.k(); ++j) {
    probe_gap = std::max(probe_gap,
                         std::abs(probe.p[static_cast<std::size_t>(j)] -
                                  probe.q[static_cast<std::size_t>(j)]));
  }
  if (probe_gap < 1e-12) {
    QuantizerSpec uniform = uniform_posterior_quantizer(k);
    const double obj = objective(uniform);
    return {std::move(uniform), obj, {}, 0, true};
  }

  constexpr double margin = 1e-9;
  auto make_spec = [&](const std::vector<double>& t) {
    return QuantizerSpec(k, QuantizerDomain::PosteriorStat, t);
  };

  std::vector<std::vector<double>> starts;
  starts.push_back(detail::uniform_thresholds(k));
  starts.push_back(detail::mass_matched_thresholds(probe, k));
  starts.push_back(detail::random_thresholds(k, opts.seed));

  bool have_best = false;
  ThresholdOptimization best{uniform_posterior_quantizer(k), 0.0, {}, 0, false};
  for (const auto& start : starts) {
    std::vector<double> cur = start;
    double obj = objective(make_spec(cur));
    std::vector<double> log;
    int sweeps = 0;
    for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
      const double before = obj;
      for (int i = 0; i < k - 1; ++i) {
        const double lo =
            (i > 0 ? cur[static_cast<std::size_t>(i - 1)] : 0.0) + margin;
        const double hi =
            (i + 1 < k - 1 ? cur[static_cast<std::size_t>(i + 1)] : 1.0) -
            margin;
        if (!(hi > lo)) continue;
        auto negated = [&](double t) {
          std::vector<double> trial = cur;
          trial[static_cast<std::size_t>(i)] = t;
          return -objective(make_spec(trial));
        };
        const num::ScalarMin m =
            num::golden_section_min(negated, lo, hi, opts.coord_tol);
        if (-m.fx > obj) {
          cur[static_cast<std::size_t>(i)] = m.x;
          obj = -m.fx;
        }
      }
      log.push_back(obj);
      ++sweeps;
      if (obj - before < opts.sweep_tol) break;
    }
    if (!have_best || obj > best.objective) {
      best = {make_spec(cur), obj, std::move(log), sweeps, false};
      have_best = true;
    }
  }
  return best;
}

}  // namespace tandet
