#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "pskdiff/types.hpp"

namespace pskdiff::montecarlo {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Decorrelated per-run stream; the same (seed, run) pair always reproduces
// the same draws regardless of how runs are ordered or batched.
inline std::mt19937_64 run_stream(std::uint64_t seed, std::uint64_t run) {
  return std::mt19937_64(splitmix64(seed ^ splitmix64(run)));
}

// Hand-rolled variates: the std distributions are implementation-defined,
// and trace reproducibility across toolchains needs fixed algorithms.
struct Sampler {
  std::mt19937_64 gen;

  explicit Sampler(std::mt19937_64 g) : gen(std::move(g)) {}

  double uniform01() {
    // (0, 1], 53-bit mantissa
    return (static_cast<double>(gen() >> 11) + 1.0) * 0x1p-53;
  }

  int bit() { return static_cast<int>(gen() >> 63); }

  double normal(double mean, double stddev) {
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return mean + stddev * r * std::cos(2.0 * std::numbers::pi * u2);
  }

  std::uint64_t poisson(double lambda) {
    if (lambda <= 0.0) return 0;
    // exponential inter-arrival accumulation; fine for the moderate rates here
    std::uint64_t k = 0;
    double t = -std::log(uniform01());
    while (t < lambda) {
      ++k;
      t -= std::log(uniform01());
    }
    return k;
  }
};

struct ShotRecord {
  int true_symbol = 0;  // 0 or 1
  double phase = 0.0;   // sampled channel phase
  double outcome = 0.0; // quadrature value, or click count for the counter
  int inferred_symbol = 0;
};

inline constexpr double quadrature_sigma = 0.70710678118654752440;  // sqrt(1/2)

// Symbol s maps to sign +1 ("1") or -1 ("0"); x ~ N(s sqrt2 alpha cos phi, 1/2),
// inference by sign of x.
inline ShotRecord simulate_homodyne_shot(Sampler& sampler, const SignalParams& params,
                                         int symbol) {
  ShotRecord rec;
  rec.true_symbol = symbol;
  rec.phase = params.delta == 0.0 ? 0.0 : sampler.normal(0.0, params.delta);
  const double sign = symbol == 1 ? 1.0 : -1.0;
  const double mean = sign * std::numbers::sqrt2 * params.alpha * std::cos(rec.phase);
  rec.outcome = sampler.normal(mean, quadrature_sigma);
  rec.inferred_symbol = rec.outcome > 0.0 ? 1 : 0;
  return rec;
}

// Click count ~ Poisson(4 a^2 cos^2(phi/2)) for symbol "1" and
// Poisson(4 a^2 sin^2(phi/2)) for symbol "0"; infer "1" iff any click.
inline ShotRecord simulate_kennedy_shot(Sampler& sampler, const SignalParams& params,
                                        int symbol) {
  ShotRecord rec;
  rec.true_symbol = symbol;
  rec.phase = params.delta == 0.0 ? 0.0 : sampler.normal(0.0, params.delta);
  const double a = params.alpha;
  const double half = 0.5 * rec.phase;
  const double proj = symbol == 1 ? std::cos(half) : std::sin(half);
  const double rate = 4.0 * a * a * proj * proj;
  rec.outcome = static_cast<double>(sampler.poisson(rate));
  rec.inferred_symbol = rec.outcome > 0.0 ? 1 : 0;
  return rec;
}

struct RunConfig {
  SignalParams params{1.0, 0.0};
  std::uint64_t shots_per_run = 5000;
  std::uint64_t runs = 10;
  std::uint64_t seed = 1;
  Receiver receiver = Receiver::homodyne;
};

inline void validate(const RunConfig& config) {
  validate(config.params);
  if (config.shots_per_run == 0 || config.runs == 0)
    throw std::invalid_argument("RunConfig: shots_per_run and runs must be positive");
  if (config.receiver == Receiver::helstrom)
    throw std::invalid_argument("RunConfig: no physical sampling model for the bound");
}

struct RunSummary {
  std::vector<double> per_run_error;
  double mean_error = 0.0;
  double std_of_mean = 0.0;
  bool spread_degenerate = false;  // runs < 2: no spread estimate
};

inline RunSummary run_experiment(const RunConfig& config) {
  validate(config);
  RunSummary summary;
  summary.per_run_error.reserve(config.runs);
  for (std::uint64_t run = 0; run < config.runs; ++run) {
    Sampler sampler(run_stream(config.seed, run));
    std::uint64_t errors = 0;
    for (std::uint64_t shot = 0; shot < config.shots_per_run; ++shot) {
      const int symbol = sampler.bit();
      const ShotRecord rec = config.receiver == Receiver::kennedy
                                 ? simulate_kennedy_shot(sampler, config.params, symbol)
                                 : simulate_homodyne_shot(sampler, config.params, symbol);
      errors += rec.inferred_symbol != rec.true_symbol ? 1 : 0;
    }
    summary.per_run_error.push_back(static_cast<double>(errors) /
                                    static_cast<double>(config.shots_per_run));
  }

  long double sum = 0.0L;
  for (const double m : summary.per_run_error) sum += m;
  summary.mean_error = static_cast<double>(sum / static_cast<long double>(config.runs));
  if (config.runs < 2) {
    summary.std_of_mean = 0.0;
    summary.spread_degenerate = true;
  } else {
    long double ss = 0.0L;
    for (const double m : summary.per_run_error) {
      const long double d = static_cast<long double>(m) - summary.mean_error;
      ss += d * d;
    }
    const long double var = ss / static_cast<long double>(config.runs - 1);
    summary.std_of_mean =
        static_cast<double>(std::sqrt(var / static_cast<long double>(config.runs)));
  }
  return summary;
}

struct TraceRow {
  std::uint64_t index = 0;
  double psi = 0.0;    // measured quadrature angle
  int symbol = 0;      // 0 or 1
  double phase = 0.0;  // channel phase draw for this point
  double outcome = 0.0;
};

// Raw quadrature record along an oscillator-angle grid, one fresh channel
// phase per point: outcome ~ N(s sqrt2 alpha cos(phi - psi), 1/2).
inline std::vector<TraceRow> generate_trace(const SignalParams& params,
                                            const std::vector<int>& symbols,
                                            const std::vector<double>& psi_grid,
                                            std::uint64_t seed) {
  validate(params);
  if (symbols.empty() || symbols.size() != psi_grid.size())
    throw std::invalid_argument("generate_trace: need matching nonempty symbol and angle grids");
  Sampler sampler(run_stream(seed, 0));
  std::vector<TraceRow> rows;
  rows.reserve(symbols.size());
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    TraceRow row;
    row.index = i;
    row.psi = psi_grid[i];
    row.symbol = symbols[i];
    row.phase = params.delta == 0.0 ? 0.0 : sampler.normal(0.0, params.delta);
    const double sign = row.symbol == 1 ? 1.0 : -1.0;
    const double mean =
        sign * std::numbers::sqrt2 * params.alpha * std::cos(row.phase - row.psi);
    row.outcome = sampler.normal(mean, quadrature_sigma);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace pskdiff::montecarlo
