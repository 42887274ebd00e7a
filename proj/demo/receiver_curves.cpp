// Prints error-probability curves P_Q, P_K, P_H against the dephasing level
// for a few signal energies. Pipe the output into your plotter of choice.
#include <cstdio>

#include "pskdiff/pskdiff.hpp"

int main() {
  using namespace pskdiff;
  const numkit::QuadratureRule rule = numkit::gauss_hermite(96);

  std::printf("energy,delta,P_helstrom,P_kennedy,P_homodyne\n");
  for (const double energy : {0.25, 1.0, 2.0, 4.0}) {
    const double alpha = std::sqrt(energy);
    for (int i = 0; i <= 60; ++i) {
      const SignalParams params{alpha, i * 0.05};
      std::printf("%g,%.3f,%.10e,%.10e,%.10e\n", energy, params.delta,
                  receivers::helstrom(params).value,
                  receivers::kennedy(params, rule).value,
                  receivers::homodyne(params, rule).value);
    }
  }
  return 0;
}
