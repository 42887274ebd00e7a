#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <stdexcept>

#include "oracles.hpp"
#include "pskdiff/receivers.hpp"
#include "pskdiff/threshold.hpp"

using namespace pskdiff;

namespace {

const numkit::QuadratureRule& rule96() {
  static const numkit::QuadratureRule rule = numkit::gauss_hermite(96);
  return rule;
}

threshold::ThresholdPoint solve(double energy, double tol = 1e-9, double delta_max = 4.0) {
  return threshold::delta_threshold(energy, tol, delta_max, rule96());
}

}  // namespace

TEST_CASE("weak signals favor homodyne from the start", "[threshold]") {
  for (const double energy : {0.1, 0.25}) {
    const threshold::ThresholdPoint point = solve(energy);
    REQUIRE(point.energy == energy);
    REQUIRE(point.delta_th == 0.0);
    REQUIRE(point.bracket_residual == 0.0);
    REQUIRE(point.status == threshold::ThresholdStatus::zero);
    REQUIRE(std::isnan(point.recross_delta));

    // the closed noiseless forms agree with the verdict
    const double alpha = std::sqrt(energy);
    const double hom = 0.5 * static_cast<double>(oracles::erfc_ld(
                                 std::numbers::sqrt2_v<long double> * alpha));
    const double ken = 0.5 * std::exp(-4.0 * energy);
    REQUIRE(hom <= ken);
  }
}

TEST_CASE("strong signals cross at the frozen thresholds", "[threshold]") {
  const threshold::ThresholdPoint n2 = solve(2.0);
  REQUIRE(n2.status == threshold::ThresholdStatus::crossing);
  REQUIRE_THAT(n2.delta_th, Catch::Matchers::WithinAbs(oracles::delta_th_n2, 1e-9));
  REQUIRE(n2.bracket_residual <= 1e-9);

  const threshold::ThresholdPoint n4 = solve(4.0);
  REQUIRE(n4.status == threshold::ThresholdStatus::crossing);
  REQUIRE_THAT(n4.delta_th, Catch::Matchers::WithinAbs(oracles::delta_th_n4, 1e-9));
  REQUIRE(n4.bracket_residual <= 1e-9);
}

TEST_CASE("threshold partitions the receivers", "[threshold]") {
  // kennedy wins below, homodyne at or above: check a step on either side
  for (const double energy : {2.0, 4.0}) {
    const threshold::ThresholdPoint point = solve(energy);
    const SignalParams below{std::sqrt(energy),
                             std::max(0.0, point.delta_th - 0.05)};
    const SignalParams above{std::sqrt(energy), point.delta_th + 0.05};
    REQUIRE(receivers::kennedy(below, rule96()).value <
            receivers::homodyne(below, rule96()).value);
    REQUIRE(receivers::homodyne(above, rule96()).value <
            receivers::kennedy(above, rule96()).value);
  }
}

TEST_CASE("delta_threshold validates its inputs", "[threshold]") {
  REQUIRE_THROWS_AS(solve(0.0), std::invalid_argument);
  REQUIRE_THROWS_AS(solve(-1.0), std::invalid_argument);
  REQUIRE_THROWS_AS(solve(2.0, 1e-11), std::invalid_argument);
  REQUIRE_THROWS_AS(solve(2.0, 1e-9, 0.0), std::invalid_argument);
  REQUIRE_THROWS_AS(solve(2.0, 1e-9, 4.5), std::invalid_argument);
}

TEST_CASE("a too-small search window reports no crossing", "[threshold]") {
  REQUIRE_THROWS_AS(solve(2.0, 1e-9, 0.03), std::runtime_error);
}

TEST_CASE("threshold_curve handles grids and row failures", "[threshold]") {
  const auto curve = [](const std::vector<double>& grid) {
    return threshold::threshold_curve(grid, 1e-9, 4.0, rule96());
  };

  const auto weak = curve({0.1, 0.25});
  REQUIRE(weak.size() == 2);
  for (const threshold::CurveRow& r : weak) {
    REQUIRE(r.error.empty());
    REQUIRE(r.point.status == threshold::ThresholdStatus::zero);
  }

  const auto strong = curve({2.0, 4.0});
  REQUIRE(strong.size() == 2);
  REQUIRE_THAT(strong[0].point.delta_th,
               Catch::Matchers::WithinAbs(oracles::delta_th_n2, 1e-9));
  REQUIRE_THAT(strong[1].point.delta_th,
               Catch::Matchers::WithinAbs(oracles::delta_th_n4, 1e-9));

  const auto single = curve({2.0});
  REQUIRE(single.size() == 1);
  REQUIRE(single[0].error.empty());

  REQUIRE_THROWS_AS(curve({}), std::invalid_argument);

  // an invalid interior energy poisons its own row only
  const auto mixed = curve({0.25, -1.0, 2.0});
  REQUIRE(mixed.size() == 3);
  REQUIRE(mixed[0].error.empty());
  REQUIRE_FALSE(mixed[1].error.empty());
  REQUIRE(mixed[1].point.energy == -1.0);
  REQUIRE(std::isnan(mixed[1].point.delta_th));
  REQUIRE(std::isnan(mixed[1].point.bracket_residual));
  REQUIRE(mixed[2].error.empty());
  REQUIRE_THAT(mixed[2].point.delta_th,
               Catch::Matchers::WithinAbs(oracles::delta_th_n2, 1e-9));
}
