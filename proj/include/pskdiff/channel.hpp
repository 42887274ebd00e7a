#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>

#include "pskdiff/numkit.hpp"
#include "pskdiff/types.hpp"

namespace pskdiff::channel {

// Smallest d0 with Poisson(alpha^2) tail P(X >= d0) < tail_epsilon, plus a
// guard band of 5. Vacuum input needs only the guard-banded minimum.
inline std::size_t choose_truncation(double alpha, const TruncationPolicy& policy = {}) {
  validate(policy);
  if (!(alpha >= 0.0) || !std::isfinite(alpha))
    throw std::invalid_argument("choose_truncation: alpha must be finite and >= 0");
  if (alpha == 0.0) return 2;
  const long double lambda = static_cast<long double>(alpha) * alpha;
  long double log_p = -lambda;          // ln P(X = 0)
  long double cdf = std::exp(log_p);    // P(X < d0)
  std::size_t d0 = 1;
  while (1.0L - cdf >= static_cast<long double>(policy.tail_epsilon)) {
    log_p += std::log(lambda) - std::log(static_cast<long double>(d0));
    cdf += std::exp(log_p);
    ++d0;
    if (d0 > policy.max_dim + 64) break;
  }
  std::size_t dim = d0 + 5;
  if (dim < 2) dim = 2;
  if (dim > policy.max_dim)
    throw std::runtime_error("choose_truncation: required dimension exceeds max_dim");
  return dim;
}

// <m| rho'_{s alpha} |n> = s^{m+n} exp(-alpha^2) alpha^{m+n} exp(-(m-n)^2 delta^2 / 2) / sqrt(m! n!)
// Entries assembled in log space so alpha^{m+n} never overflows.
inline FockMatrix rho_matrix(const SignalParams& params, int sign, std::size_t dim) {
  validate(params);
  if (sign != 1 && sign != -1)
    throw std::invalid_argument("rho_matrix: sign must be +1 or -1");
  if (dim < 2) throw std::invalid_argument("rho_matrix: dim must be >= 2");
  FockMatrix out(dim);
  if (params.alpha == 0.0) {
    out.at(0, 0) = 1.0;
    return out;
  }
  const long double la = std::log(static_cast<long double>(params.alpha));
  const long double a2 = static_cast<long double>(params.alpha) * params.alpha;
  const long double d2 = static_cast<long double>(params.delta) * params.delta;
  for (std::size_t m = 0; m < dim; ++m) {
    for (std::size_t n = m; n < dim; ++n) {
      const long double diff = static_cast<long double>(n - m);
      const long double ln_entry = static_cast<long double>(m + n) * la - a2 -
                                   0.5L * diff * diff * d2 -
                                   0.5L * (static_cast<long double>(numkit::log_factorial(m)) +
                                           static_cast<long double>(numkit::log_factorial(n)));
      double v = static_cast<double>(std::exp(ln_entry));
      if (sign < 0 && ((m + n) % 2 == 1)) v = -v;
      out.at(m, n) = v;
      out.at(n, m) = v;
    }
  }
  return out;
}

// Lambda = rho'_{+alpha} - rho'_{-alpha}; the parity factor [1 - (-1)^{n-m}]
// kills every even m-n entry exactly, so Lambda is traceless by construction.
inline FockMatrix lambda_matrix(const SignalParams& params, std::size_t dim) {
  validate(params);
  if (dim < 2) throw std::invalid_argument("lambda_matrix: dim must be >= 2");
  FockMatrix out(dim);
  if (params.alpha == 0.0) return out;
  const long double la = std::log(static_cast<long double>(params.alpha));
  const long double a2 = static_cast<long double>(params.alpha) * params.alpha;
  const long double d2 = static_cast<long double>(params.delta) * params.delta;
  for (std::size_t m = 0; m < dim; ++m) {
    for (std::size_t n = m + 1; n < dim; ++n) {
      if ((n - m) % 2 == 0) continue;
      const long double diff = static_cast<long double>(n - m);
      const long double ln_entry = static_cast<long double>(m + n) * la - a2 -
                                   0.5L * diff * diff * d2 -
                                   0.5L * (static_cast<long double>(numkit::log_factorial(m)) +
                                           static_cast<long double>(numkit::log_factorial(n)));
      const double v = 2.0 * static_cast<double>(std::exp(ln_entry));
      out.at(m, n) = v;
      out.at(n, m) = v;
    }
  }
  return out;
}

}  // namespace pskdiff::channel
