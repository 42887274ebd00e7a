#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pskdiff/channel.hpp"
#include "pskdiff/numkit.hpp"
#include "pskdiff/types.hpp"

namespace pskdiff::receivers {

// Below this noise level the integrand's effective support is narrow and
// Gauss-Hermite is spectrally exact; above it the periodic harmonic route
// keeps order-96 and order-192 results identical to ~1e-15.
inline constexpr double gauss_hermite_crossover = 0.01;

template <class H>
double phase_average(H&& h, double delta, const numkit::QuadratureRule& rule) {
  if (delta == 0.0) return h(0.0);
  if (delta < gauss_hermite_crossover)
    return numkit::gaussian_expectation(h, delta, rule);
  return numkit::periodic_gaussian_expectation(h, delta);
}

inline double clamp_error(double v) { return std::clamp(v, 0.0, 0.5); }

inline double clamp_unit(double v) { return std::clamp(v, 0.0, 1.0); }

// Noiseless two-state bound: P = (1 - sqrt(1 - e^{-4N})) / 2.
inline ErrorProbability helstrom_pure(double energy) {
  if (!(energy >= 0.0) || !std::isfinite(energy))
    throw std::invalid_argument("helstrom_pure: energy must be finite and >= 0");
  const double overlap = -std::expm1(-4.0 * energy);  // 1 - e^{-4N}
  const double value = 0.5 * (1.0 - std::sqrt(overlap));
  return {clamp_error(value), Receiver::helstrom, SignalParams{std::sqrt(energy), 0.0}};
}

// Half the trace-norm distance of the two diffused signals, from the
// eigenvalues of the truncated difference operator.
inline ErrorProbability helstrom(const SignalParams& params, const TruncationPolicy& policy = {}) {
  validate(params);
  if (params.alpha == 0.0) return {0.5, Receiver::helstrom, params};
  const std::size_t dim = channel::choose_truncation(params.alpha, policy);
  const FockMatrix lambda = channel::lambda_matrix(params, dim);
  const std::vector<double> ev = numkit::symmetric_eigenvalues(lambda);
  long double trace_norm = 0.0L;
  for (const double v : ev) trace_norm += std::abs(static_cast<long double>(v));
  const double value = 0.5 * (1.0 - 0.5 * static_cast<double>(trace_norm));
  return {clamp_error(value), Receiver::helstrom, params};
}

// p01 = E[exp(-4 a^2 cos^2(phi/2))], p10 = 1 - E[exp(-4 a^2 sin^2(phi/2))].
// Noiseless limit: (e^{-4N}, 0).
inline ConditionalPair kennedy_conditionals(const SignalParams& params,
                                            const numkit::QuadratureRule& rule) {
  validate(params);
  const double a2 = params.alpha * params.alpha;
  if (params.delta == 0.0) return {std::exp(-4.0 * a2), 0.0};
  const double p01 = phase_average(
      [a2](double phi) {
        const double c = std::cos(0.5 * phi);
        return std::exp(-4.0 * a2 * c * c);
      },
      params.delta, rule);
  const double p10 = 1.0 - phase_average(
                               [a2](double phi) {
                                 const double s = std::sin(0.5 * phi);
                                 return std::exp(-4.0 * a2 * s * s);
                               },
                               params.delta, rule);
  return {clamp_unit(p01), clamp_unit(p10)};
}

inline ErrorProbability kennedy(const SignalParams& params, const numkit::QuadratureRule& rule) {
  const ConditionalPair pr = kennedy_conditionals(params, rule);
  return {clamp_error(0.5 * (pr.p01 + pr.p10)), Receiver::kennedy, params};
}

// Quadrature density of the diffused signal: a Gaussian of variance 1/2
// centered on sign * sqrt2 * alpha * cos(phi), phase-averaged.
inline double homodyne_density(double x, int sign, const SignalParams& params,
                               const numkit::QuadratureRule& rule) {
  validate(params);
  if (sign != 1 && sign != -1)
    throw std::invalid_argument("homodyne_density: sign must be +1 or -1");
  if (!std::isfinite(x)) throw std::invalid_argument("homodyne_density: x must be finite");
  const double mu = sign * std::numbers::sqrt2 * params.alpha;
  double mean;
  if (params.delta == 0.0) {
    const double d = x - mu;
    mean = std::exp(-d * d);
  } else {
    mean = phase_average(
        [x, mu](double phi) {
          const double d = x - mu * std::cos(phi);
          return std::exp(-d * d);
        },
        params.delta, rule);
  }
  return std::max(0.0, mean * std::numbers::inv_sqrtpi);
}

// Both error conditionals equal E[erfc(sqrt2 alpha cos phi) / 2] by the
// reflection symmetry x -> -x, sign -> -sign of the density.
inline ConditionalPair homodyne_conditionals(const SignalParams& params,
                                             const numkit::QuadratureRule& rule) {
  validate(params);
  const double a = params.alpha;
  double q;
  if (params.delta == 0.0) {
    q = 0.5 * numkit::erfc(std::numbers::sqrt2 * a);
  } else {
    q = phase_average(
        [a](double phi) { return 0.5 * numkit::erfc(std::numbers::sqrt2 * a * std::cos(phi)); },
        params.delta, rule);
  }
  q = clamp_unit(q);
  return {q, q};
}

inline ErrorProbability homodyne(const SignalParams& params, const numkit::QuadratureRule& rule) {
  const ConditionalPair pr = homodyne_conditionals(params, rule);
  return {clamp_error(0.5 * (pr.p01 + pr.p10)), Receiver::homodyne, params};
}

}  // namespace pskdiff::receivers
