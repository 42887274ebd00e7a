#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "pskdiff/numkit.hpp"
#include "pskdiff/receivers.hpp"
#include "pskdiff/types.hpp"

namespace pskdiff::asymptotics {

// Leading-order error forms in the weak-signal regime, clamped to [0, 1/2]:
//   helstrom: 1/2 (1 - alpha e^{-delta^2/2})
//   kennedy:  1/2 (1 - 4 alpha^2 e^{-2 delta^2})
//   homodyne: 1/2 (1 - alpha sqrt(2/pi) e^{-delta^2/2})
inline double paper_small_alpha(Receiver receiver, const SignalParams& params) {
  validate(params);
  const double a = params.alpha;
  const double d2 = params.delta * params.delta;
  double v;
  switch (receiver) {
    case Receiver::helstrom:
      v = 0.5 * (1.0 - a * std::exp(-0.5 * d2));
      break;
    case Receiver::kennedy:
      v = 0.5 * (1.0 - 4.0 * a * a * std::exp(-2.0 * d2));
      break;
    case Receiver::homodyne:
      v = 0.5 * (1.0 - a * std::sqrt(2.0 / std::numbers::pi) * std::exp(-0.5 * d2));
      break;
    default:
      throw std::invalid_argument("paper_small_alpha: unknown receiver");
  }
  return std::clamp(v, 0.0, 0.5);
}

inline double exact_error(Receiver receiver, const SignalParams& params,
                          const numkit::QuadratureRule& rule, const TruncationPolicy& policy) {
  switch (receiver) {
    case Receiver::helstrom:
      return receivers::helstrom(params, policy).value;
    case Receiver::kennedy:
      return receivers::kennedy(params, rule).value;
    case Receiver::homodyne:
      return receivers::homodyne(params, rule).value;
  }
  throw std::invalid_argument("exact_error: unknown receiver");
}

// Estimates c(delta) in P ~ (1 - c alpha^p) / 2 (p = 2 for the photon
// counter, else 1) by Richardson extrapolation on alpha = 1e-3 and 2e-3.
inline double small_alpha_coefficient(Receiver receiver, double delta,
                                      const numkit::QuadratureRule& rule,
                                      const TruncationPolicy& policy = {}) {
  if (!std::isfinite(delta) || delta < 0.0)
    throw std::invalid_argument("small_alpha_coefficient: delta must be finite and >= 0");
  const int p = receiver == Receiver::kennedy ? 2 : 1;
  const std::array<double, 2> alphas = {1e-3, 2e-3};
  std::array<double, 2> c{};
  for (std::size_t i = 0; i < 2; ++i) {
    const SignalParams params{alphas[i], delta};
    const double err = exact_error(receiver, params, rule, policy);
    c[i] = 2.0 * (0.5 - err) / std::pow(alphas[i], p);
  }
  // Every gap expands in even powers past its leading term, so c(a) =
  // c0 + O(a^2) regardless of p; extrapolate in a^2.
  const double w = 4.0;
  return (w * c[0] - c[1]) / (w - 1.0);
}

struct FitReport {
  double estimated_rate = 0.0;       // k in ln(1 - 2P) = ln g - k delta^2
  double estimated_prefactor = 0.0;  // g
  double residual = 0.0;             // max abs deviation of the fit line
  double delta_min = 0.0;
  double delta_max = 0.0;
  std::size_t points = 0;
};

// Least-squares line through (delta^2, ln(1 - 2P)) on a strong-noise window.
inline FitReport fit_large_delta(Receiver receiver, double alpha, double delta_min,
                                 double delta_max, std::size_t points,
                                 const numkit::QuadratureRule& rule,
                                 const TruncationPolicy& policy = {}) {
  if (!std::isfinite(alpha) || alpha <= 0.0)
    throw std::invalid_argument("fit_large_delta: alpha must be finite and > 0");
  if (!(delta_min >= 1.0) || !(delta_max <= 4.0) || !(delta_min < delta_max))
    throw std::invalid_argument("fit_large_delta: window must satisfy 1 <= min < max <= 4");
  if (points < 8) throw std::invalid_argument("fit_large_delta: need at least 8 points");

  std::vector<long double> xs(points), ys(points);
  for (std::size_t i = 0; i < points; ++i) {
    const double delta =
        delta_min + (delta_max - delta_min) * static_cast<double>(i) / static_cast<double>(points - 1);
    const SignalParams params{alpha, delta};
    const double err = exact_error(receiver, params, rule, policy);
    const double gap = 1.0 - 2.0 * err;
    if (!(gap > 0.0))
      throw std::runtime_error("fit_large_delta: error saturated at 1/2 inside the window");
    xs[i] = static_cast<long double>(delta) * delta;
    ys[i] = std::log(static_cast<long double>(gap));
  }

  long double sx = 0.0L, sy = 0.0L, sxx = 0.0L, sxy = 0.0L;
  for (std::size_t i = 0; i < points; ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const long double n = static_cast<long double>(points);
  const long double det = n * sxx - sx * sx;
  const long double slope = (n * sxy - sx * sy) / det;
  const long double intercept = (sy - slope * sx) / n;

  long double max_dev = 0.0L;
  for (std::size_t i = 0; i < points; ++i) {
    const long double dev = ys[i] - (intercept + slope * xs[i]);
    max_dev = std::max(max_dev, std::abs(dev));
  }

  FitReport report;
  report.estimated_rate = static_cast<double>(-slope);
  report.estimated_prefactor = static_cast<double>(std::exp(intercept));
  report.residual = static_cast<double>(max_dev);
  report.delta_min = delta_min;
  report.delta_max = delta_max;
  report.points = points;
  return report;
}

struct PrefactorReport {
  double alpha = 0.0;
  double g_helstrom = 0.0;
  double g_kennedy = 0.0;
  double g_homodyne = 0.0;
};

inline PrefactorReport prefactor_comparison(double alpha, double delta_min, double delta_max,
                                            std::size_t points, const numkit::QuadratureRule& rule,
                                            const TruncationPolicy& policy = {}) {
  PrefactorReport report;
  report.alpha = alpha;
  report.g_helstrom =
      fit_large_delta(Receiver::helstrom, alpha, delta_min, delta_max, points, rule, policy)
          .estimated_prefactor;
  report.g_kennedy =
      fit_large_delta(Receiver::kennedy, alpha, delta_min, delta_max, points, rule, policy)
          .estimated_prefactor;
  report.g_homodyne =
      fit_large_delta(Receiver::homodyne, alpha, delta_min, delta_max, points, rule, policy)
          .estimated_prefactor;
  return report;
}

}  // namespace pskdiff::asymptotics
