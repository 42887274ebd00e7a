#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "pskdiff/types.hpp"

namespace pskdiff::numkit {

inline double erfc(double x) { return std::erfc(x); }

// ln(n!), exact accumulation below 256, Stirling series above.
inline double log_factorial(std::size_t n) {
  static const std::vector<double> table = [] {
    std::vector<double> t(256, 0.0);
    long double acc = 0.0L;
    for (std::size_t k = 1; k < t.size(); ++k) {
      acc += std::log(static_cast<long double>(k));
      t[k] = static_cast<double>(acc);
    }
    return t;
  }();
  if (n < table.size()) return table[n];
  const long double x = static_cast<long double>(n);
  const long double half_log_two_pi = 0.91893853320467274178032973640562L;
  long double s = (x + 0.5L) * std::log(x) - x + half_log_two_pi;
  const long double ix = 1.0L / x, ix2 = ix * ix;
  s += ix * (1.0L / 12 - ix2 * (1.0L / 360 - ix2 * (1.0L / 1260 - ix2 / 1680)));
  return static_cast<double>(s);
}

// Gauss-Hermite rule for integrals against exp(-t^2). Nodes ascending,
// symmetric about zero. Stored in long double: order-512 edge weights
// (~5e-430) underflow a double.
struct QuadratureRule {
  std::size_t order = 0;
  std::vector<long double> nodes;
  std::vector<long double> weights;
};

inline QuadratureRule gauss_hermite(std::size_t order) {
  if (order < 1 || order > 512)
    throw std::invalid_argument("gauss_hermite: order must be in [1, 512]");
  const std::size_t n = order;
  const long double pim4 = 0.75112554446494248285870300477623L;  // pi^(-1/4)

  // Orthonormal-recurrence values h_n(z) and h_n'(z) = sqrt(2n) h_{n-1}(z);
  // magnitudes stay within long double range for every order allowed here.
  struct Eval {
    long double value;
    long double slope;
  };
  const auto eval = [n, pim4](long double z) {
    long double p1 = pim4, p2 = 0.0L;
    for (std::size_t j = 1; j <= n; ++j) {
      const long double p3 = p2;
      p2 = p1;
      p1 = z * std::sqrt(2.0L / j) * p2 - std::sqrt(static_cast<long double>(j - 1) / j) * p3;
    }
    return Eval{p1, std::sqrt(2.0L * n) * p2};
  };

  // Sturm count on the Jacobi matrix (diagonal 0, off-diagonal^2 = j/2):
  // number of nodes strictly below x. Bisection with this count isolates
  // every root; Newton polishing from a clustered guess cannot.
  const auto count_below = [n](long double x) {
    std::size_t count = 0;
    long double d = -x;
    for (std::size_t j = 0; j < n; ++j) {
      if (j > 0) {
        long double denom = d;
        if (std::abs(denom) < 1e-1000L) denom = denom < 0.0L ? -1e-1000L : 1e-1000L;
        d = -x - 0.5L * static_cast<long double>(j) / denom;
      }
      if (d < 0.0L) ++count;
    }
    return count;
  };

  const std::size_t m = (n + 1) / 2;
  const long double radius = std::sqrt(2.0L * static_cast<long double>(n)) + 1.0L;
  std::vector<long double> root(m), weight(m);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t k = n - 1 - i;  // ascending eigenvalue index, upper half
    long double lo = -radius, hi = radius;
    for (int it = 0; it < 200 && hi - lo > 1e-19L * std::max(1.0L, std::abs(hi)); ++it) {
      const long double mid = 0.5L * (lo + hi);
      if (count_below(mid) <= k)
        lo = mid;
      else
        hi = mid;
    }
    long double z = 0.5L * (lo + hi);
    for (int it = 0; it < 100; ++it) {
      const Eval e = eval(z);
      const long double dz = e.value / e.slope;
      z -= dz;
      if (std::abs(dz) <= 1e-18L * std::max(1.0L, std::abs(z))) break;
    }
    const long double pp = eval(z).slope;
    root[i] = z;
    weight[i] = 2.0L / (pp * pp);
  }
  QuadratureRule rule;
  rule.order = n;
  rule.nodes.assign(n, 0.0L);
  rule.weights.assign(n, 0.0L);
  for (std::size_t i = 0; i < m; ++i) {
    rule.nodes[n - 1 - i] = root[i];
    rule.nodes[i] = -root[i];
    rule.weights[n - 1 - i] = weight[i];
    rule.weights[i] = weight[i];
  }
  if (n % 2 == 1) rule.nodes[m - 1] = 0.0L;
  return rule;
}

// E[f(phi)] with phi ~ Normal(0, sigma^2), as (1/sqrt(pi)) sum w_i f(sqrt2 sigma t_i).
// sigma = 0 returns f(0) exactly.
template <class F>
double gaussian_expectation(F&& f, double sigma, const QuadratureRule& rule) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma))
    throw std::invalid_argument("gaussian_expectation: sigma must be finite and >= 0");
  if (rule.order == 0 || rule.nodes.size() != rule.order || rule.weights.size() != rule.order)
    throw std::invalid_argument("gaussian_expectation: malformed quadrature rule");
  if (sigma == 0.0) return f(0.0);
  const long double scale = std::numbers::sqrt2_v<long double> * static_cast<long double>(sigma);
  long double acc = 0.0L;
  for (std::size_t i = 0; i < rule.order; ++i)
    acc += rule.weights[i] * static_cast<long double>(f(static_cast<double>(scale * rule.nodes[i])));
  return static_cast<double>(acc * std::numbers::inv_sqrtpi_v<long double>);
}

// E[h(phi)] with phi ~ Normal(0, sigma^2) for 2pi-periodic h, via the harmonic
// identity E[h] = sum_k h_k exp(-k^2 sigma^2 / 2): an M-point periodic trapezoid
// of h against the damped Dirichlet-style kernel. Spectrally exact for moderate
// and large sigma, where wide-support Gauss-Hermite loses the periodicity.
template <class H>
double periodic_gaussian_expectation(H&& h, double sigma) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma))
    throw std::invalid_argument("periodic_gaussian_expectation: sigma must be finite and >= 0");
  if (sigma == 0.0) return h(0.0);
  const double kernel_tail = 1e-18;
  std::size_t K = static_cast<std::size_t>(std::ceil(std::sqrt(-2.0 * std::log(kernel_tail)) / sigma));
  if (K < 1) K = 1;
  if (K > 4096) K = 4096;
  std::vector<long double> damp(K + 1, 0.0L);
  std::size_t keff = 0;
  for (std::size_t k = 1; k <= K; ++k) {
    const long double e = std::exp(-0.5L * static_cast<long double>(k) * k * sigma * sigma);
    if (e < 1e-30L) break;
    damp[k] = e;
    keff = k;
  }
  const std::size_t mcap = std::size_t{1} << 16;
  std::size_t M = 64;
  while (M < 2 * keff + 2 && M < mcap) M *= 2;
  const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
  long double prev = 0.0L;
  bool have_prev = false;
  for (;;) {
    long double acc = 0.0L;
    for (std::size_t j = 0; j < M; ++j) {
      const long double th = two_pi * j / M;
      const long double c1 = std::cos(th);
      long double ck = c1, ckm1 = 1.0L;
      long double ker = 1.0L;
      for (std::size_t k = 1; k <= keff; ++k) {
        ker += 2.0L * damp[k] * ck;
        const long double next = 2.0L * c1 * ck - ckm1;
        ckm1 = ck;
        ck = next;
      }
      acc += static_cast<long double>(h(static_cast<double>(th))) * ker;
    }
    const long double estimate = acc / M;
    if (have_prev && std::abs(estimate - prev) <= 1e-13L * (1.0L + std::abs(estimate)))
      return static_cast<double>(estimate);
    prev = estimate;
    have_prev = true;
    if (M * 2 > mcap) return static_cast<double>(estimate);
    M *= 2;
  }
}

struct EigenSystem {
  std::vector<double> values;  // ascending
  FockMatrix vectors;          // column k pairs with values[k]
};

// Cyclic Jacobi. Matrices here are small and well scaled; robustness over speed.
inline EigenSystem symmetric_eigensystem(const FockMatrix& M) {
  const std::size_t n = M.dim;
  if (n == 0 || M.entries.size() != n * n)
    throw std::invalid_argument("symmetric_eigensystem: malformed matrix");
  double asym = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      asym = std::max(asym, std::abs(M.at(i, j) - M.at(j, i)));
  if (asym > 1e-12)
    throw std::invalid_argument("symmetric_eigensystem: matrix is not symmetric");

  std::vector<double> a(M.entries);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = 0.5 * (a[i * n + j] + a[j * n + i]);
      a[i * n + j] = a[j * n + i] = v;
    }
  FockMatrix V(n);
  for (std::size_t i = 0; i < n; ++i) V.at(i, i) = 1.0;

  long double fro2 = 0.0L;
  for (const double v : a) fro2 += static_cast<long double>(v) * v;
  const double conv = 1e-12 * std::max(1e-300, std::sqrt(static_cast<double>(fro2)));

  for (int sweep = 0; sweep < 100; ++sweep) {
    long double off2 = 0.0L;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        off2 += 2.0L * static_cast<long double>(a[i * n + j]) * a[i * n + j];
    if (std::sqrt(static_cast<double>(off2)) <= conv) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (apq == 0.0) continue;
        const double app = a[p * n + p], aqq = a[q * n + q];
        const double theta = 0.5 * (aqq - app) / apq;
        double t;
        if (std::abs(theta) > 1e150) {
          t = 0.5 / theta;
        } else {
          t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);
        a[p * n + p] = app - t * apq;
        a[q * n + q] = aqq + t * apq;
        a[p * n + q] = a[q * n + p] = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const double akp = a[k * n + p], akq = a[k * n + q];
          a[k * n + p] = a[p * n + k] = akp - s * (akq + tau * akp);
          a[k * n + q] = a[q * n + k] = akq + s * (akp - tau * akq);
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = V.at(k, p), vkq = V.at(k, q);
          V.at(k, p) = vkp - s * (vkq + tau * vkp);
          V.at(k, q) = vkq + s * (vkp - tau * vkq);
        }
      }
    }
  }

  EigenSystem out;
  out.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.values[i] = a[i * n + i];
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t i, std::size_t j) { return out.values[i] < out.values[j]; });
  EigenSystem sorted;
  sorted.values.resize(n);
  sorted.vectors = FockMatrix(n);
  for (std::size_t k = 0; k < n; ++k) {
    sorted.values[k] = out.values[idx[k]];
    for (std::size_t i = 0; i < n; ++i) sorted.vectors.at(i, k) = V.at(i, idx[k]);
  }
  return sorted;
}

inline std::vector<double> symmetric_eigenvalues(const FockMatrix& M) {
  return symmetric_eigensystem(M).values;
}

}  // namespace pskdiff::numkit
