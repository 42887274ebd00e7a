#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "pskdiff/numkit.hpp"
#include "pskdiff/receivers.hpp"
#include "pskdiff/types.hpp"

namespace pskdiff::threshold {

enum class ThresholdStatus { zero, crossing };

inline const char* status_name(ThresholdStatus s) {
  return s == ThresholdStatus::zero ? "zero" : "crossing";
}

struct ThresholdPoint {
  double energy = 0.0;
  double delta_th = 0.0;
  double bracket_residual = 0.0;  // |P_hom - P_ken| at the reported noise level
  ThresholdStatus status = ThresholdStatus::zero;
  // Noise level past delta_th where the ordering flips back, if the forward
  // scan sees one; NaN otherwise. Reported, never refined.
  double recross_delta = std::numeric_limits<double>::quiet_NaN();
};

// Smallest noise level at which homodyne matches the photon counter.
// D(delta) = P_hom - P_ken starts positive when counting wins at zero noise
// and crosses downward as dephasing erodes the click statistics faster.
inline ThresholdPoint delta_threshold(double energy, double tol, double delta_max,
                                      const numkit::QuadratureRule& rule,
                                      const TruncationPolicy& policy = {}) {
  if (!std::isfinite(energy) || energy <= 0.0)
    throw std::invalid_argument("delta_threshold: energy must be finite and > 0");
  if (!(tol >= 1e-10)) throw std::invalid_argument("delta_threshold: tol must be >= 1e-10");
  if (!(delta_max > 0.0) || !(delta_max <= 4.0))
    throw std::invalid_argument("delta_threshold: delta_max must lie in (0, 4]");
  (void)policy;

  const double alpha = std::sqrt(energy);
  const auto diff = [&](double delta) {
    const SignalParams params{alpha, delta};
    return receivers::homodyne(params, rule).value - receivers::kennedy(params, rule).value;
  };

  ThresholdPoint point;
  point.energy = energy;

  const double d0 = diff(0.0);
  if (d0 <= 0.0) {
    // homodyne already ahead with no dephasing
    point.delta_th = 0.0;
    point.bracket_residual = 0.0;
    point.status = ThresholdStatus::zero;
    return point;
  }

  const double step = 0.01;
  double lo = 0.0;
  double flo = d0;
  double hi = 0.0;
  bool bracketed = false;
  const std::size_t steps = static_cast<std::size_t>(std::ceil(delta_max / step));
  for (std::size_t i = 1; i <= steps; ++i) {
    const double delta = std::min(static_cast<double>(i) * step, delta_max);
    const double f = diff(delta);
    if (!bracketed) {
      if (f <= 0.0) {
        hi = delta;
        bracketed = true;  // keep scanning forward for a later flip back
      } else {
        lo = delta;
        flo = f;
      }
    } else if (f > 0.0) {
      point.recross_delta = delta;
      break;
    }
    if (delta >= delta_max) break;
  }

  if (!bracketed)
    throw std::runtime_error(
        "delta_threshold: no crossing in [0, delta_max]; increase delta_max");

  double mid = 0.5 * (lo + hi);
  double fmid = diff(mid);
  for (std::size_t iter = 0; iter < 240 && std::abs(fmid) > tol; ++iter) {
    if ((fmid > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
    mid = 0.5 * (lo + hi);
    fmid = diff(mid);
  }
  if (std::abs(fmid) > tol)
    throw std::runtime_error("delta_threshold: bisection failed to meet tolerance");

  point.delta_th = mid;
  point.bracket_residual = std::abs(fmid);
  point.status = ThresholdStatus::crossing;
  return point;
}

struct CurveRow {
  ThresholdPoint point;
  std::string error;  // empty on success
};

inline std::vector<CurveRow> threshold_curve(const std::vector<double>& energies, double tol,
                                             double delta_max, const numkit::QuadratureRule& rule,
                                             const TruncationPolicy& policy = {}) {
  if (energies.empty()) throw std::invalid_argument("threshold_curve: empty energy grid");
  std::vector<CurveRow> rows;
  rows.reserve(energies.size());
  for (const double energy : energies) {
    CurveRow row;
    try {
      row.point = delta_threshold(energy, tol, delta_max, rule, policy);
    } catch (const std::exception& e) {
      row.point.energy = energy;
      row.point.delta_th = std::numeric_limits<double>::quiet_NaN();
      row.point.bracket_residual = std::numeric_limits<double>::quiet_NaN();
      row.error = e.what();
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace pskdiff::threshold
