#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "rt/opacity.hpp"
#include "rt/planck.hpp"

using namespace rt;

namespace {

double quad_average(const OpacityModel& op, double lo, double hi, double T) {
  const int n = 20000;
  const double h = (hi - lo) / n;
  double s = op.at(lo, T) + op.at(hi, T);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * op.at(lo + i * h, T);
  return s * h / 3.0 / (hi - lo);
}

}  // namespace

TEST_CASE("pointwise opacity forms") {
  CHECK(OpacityModel(OpacityModel::Kind::Constant, 7.5).at(3.0, 0.2) == 7.5);
  CHECK(OpacityModel(OpacityModel::Kind::TCubedInverse, 300.0).at(1.0, 0.5) ==
        doctest::Approx(300.0 / 0.125).epsilon(1e-14));
  CHECK(OpacityModel(OpacityModel::Kind::PowThreeSqrtT, 10.0).at(2.0, 0.25) ==
        doctest::Approx(10.0 / (8.0 * 0.5)).epsilon(1e-14));
  const double e = 0.7, T = 0.3;
  CHECK(OpacityModel(OpacityModel::Kind::LarsenType, 4.0).at(e, T) ==
        doctest::Approx(4.0 * (1.0 - std::exp(-e / T)) / (e * e * e)).epsilon(1e-13));
}

TEST_CASE("closed-form group averages match quadrature") {
  FrequencyGroupGrid grid = FrequencyGroupGrid::log_spaced(10, 1e-2, 20.0);
  const std::vector<OpacityModel> models = {
      OpacityModel(OpacityModel::Kind::Constant, 3.0),
      OpacityModel(OpacityModel::Kind::TCubedInverse, 300.0),
      OpacityModel(OpacityModel::Kind::PowThreeSqrtT, 10.0),
      OpacityModel(OpacityModel::Kind::LarsenType, 1000.0),
  };
  for (const auto& op : models)
    for (double T : {0.1, 0.8, 2.5})
      for (int g = 0; g < grid.groups(); ++g) {
        const double ref = quad_average(op, grid.lo(g), grid.hi(g), T);
        CHECK(op.group_average(grid, g, T) == doctest::Approx(ref).epsilon(1e-8));
      }
}

TEST_CASE("temperature-cubed model is frequency independent") {
  FrequencyGroupGrid grid = FrequencyGroupGrid::log_spaced(5, 1e-3, 10.0);
  const OpacityModel op(OpacityModel::Kind::TCubedInverse, 300.0);
  for (int g = 0; g < grid.groups(); ++g)
    CHECK(op.group_average(grid, g, 0.7) ==
          doctest::Approx(300.0 / (0.7 * 0.7 * 0.7)).epsilon(1e-13));
}

TEST_CASE("rosseland mean") {
  // constant opacity: the mean is the opacity
  CHECK(rosseland_mean({4.0, 4.0, 4.0}, {1.0, 2.0, 3.0}) ==
        doctest::Approx(4.0).epsilon(1e-14));
  // two-group hand evaluation
  const double w1 = 1.0, w2 = 3.0, s1 = 2.0, s2 = 8.0;
  const double expect = (w1 + w2) / (w1 / s1 + w2 / s2);
  CHECK(rosseland_mean({s1, s2}, {w1, w2}) == doctest::Approx(expect).epsilon(1e-14));
  // mean lies between the extremes
  const double m = rosseland_mean({1.0, 100.0}, {1.0, 1.0});
  CHECK(m > 1.0);
  CHECK(m < 100.0);
}
