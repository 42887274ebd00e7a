// Maps the homodyne/counter crossover noise level across signal energies.
// Rows with delta_th = 0 mark energies where homodyne already wins unperturbed.
#include <cstdio>

#include "pskdiff/pskdiff.hpp"

int main() {
  using namespace pskdiff;
  const numkit::QuadratureRule rule = numkit::gauss_hermite(96);

  std::vector<double> energies;
  for (double n = 0.1; n <= 4.0 + 1e-9; n += 0.1) energies.push_back(n);

  std::printf("energy,delta_th,residual,status\n");
  for (const threshold::CurveRow& row :
       threshold::threshold_curve(energies, 1e-9, 4.0, rule)) {
    if (!row.error.empty()) {
      std::printf("%g,nan,nan,error: %s\n", row.point.energy, row.error.c_str());
      continue;
    }
    std::printf("%g,%.10e,%.3e,%s\n", row.point.energy, row.point.delta_th,
                row.point.bracket_residual, threshold::status_name(row.point.status));
  }
  return 0;
}
