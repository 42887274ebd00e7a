#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace pskdiff {

// One point of the noisy channel: amplitude alpha (real, nonnegative) and
// phase-noise standard deviation delta in radians.
struct SignalParams {
  double alpha = 0.0;
  double delta = 0.0;

  double energy() const { return alpha * alpha; }

  static SignalParams from_energy(double n, double delta) {
    return SignalParams{std::sqrt(n), delta};
  }
};

inline void validate(const SignalParams& p) {
  if (!(p.alpha >= 0.0) || !std::isfinite(p.alpha))
    throw std::invalid_argument("SignalParams: alpha must be finite and >= 0");
  if (!(p.delta >= 0.0) || !std::isfinite(p.delta))
    throw std::invalid_argument("SignalParams: delta must be finite and >= 0");
}

struct TruncationPolicy {
  double tail_epsilon = 1e-12;
  std::size_t max_dim = 512;
};

inline void validate(const TruncationPolicy& p) {
  if (!(p.tail_epsilon > 0.0) || !(p.tail_epsilon < 1.0))
    throw std::invalid_argument("TruncationPolicy: tail_epsilon must be in (0, 1)");
  if (p.max_dim < 2)
    throw std::invalid_argument("TruncationPolicy: max_dim must be >= 2");
}

// Dense real matrix in the truncated photon-number basis, row-major.
struct FockMatrix {
  std::size_t dim = 0;
  std::vector<double> entries;

  FockMatrix() = default;
  explicit FockMatrix(std::size_t d) : dim(d), entries(d * d, 0.0) {}

  double& at(std::size_t m, std::size_t n) { return entries[m * dim + n]; }
  double at(std::size_t m, std::size_t n) const { return entries[m * dim + n]; }

  double trace() const {
    double t = 0.0;
    for (std::size_t i = 0; i < dim; ++i) t += at(i, i);
    return t;
  }
};

enum class Receiver { helstrom, kennedy, homodyne };

inline const char* receiver_name(Receiver r) {
  switch (r) {
    case Receiver::helstrom: return "helstrom";
    case Receiver::kennedy: return "kennedy";
    case Receiver::homodyne: return "homodyne";
  }
  return "unknown";
}

struct ErrorProbability {
  double value = 0.5;
  Receiver receiver = Receiver::helstrom;
  SignalParams params;
};

// p01: probability of inferring "0" when "1" was sent; p10 the converse.
struct ConditionalPair {
  double p01 = 0.0;
  double p10 = 0.0;
};

}  // namespace pskdiff
