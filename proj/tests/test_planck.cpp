#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "rt/planck.hpp"

using namespace rt;

namespace {

// independent composite-Simpson quadrature used as the reference
double simpson(double (*f)(double, double), double a, double b, double p, int n) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  double s = f(a, p) + f(b, p);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h, p);
  return s * h / 3.0;
}

double planck_kernel(double x, double) {
  if (x < 1e-8) return x * x;  // x^3/(e^x - 1) -> x^2
  if (x > 700.0) return 0.0;
  return x * x * x / std::expm1(x);
}

double planck_ref(double x) {
  constexpr double pi4 = pi * pi * pi * pi;
  return 15.0 / pi4 * simpson(planck_kernel, 0.0, std::min(x, 80.0), 0.0, 40000);
}

}  // namespace

TEST_CASE("cumulative integral endpoints and monotonicity") {
  CHECK(planck_cumulative(0.0) == 0.0);
  CHECK(planck_cumulative(100.0) == doctest::Approx(1.0).epsilon(1e-12));
  double prev = -1.0;
  for (double x : {0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 30.0}) {
    const double v = planck_cumulative(x);
    CHECK(v > prev);
    CHECK(v <= 1.0);
    prev = v;
  }
}

TEST_CASE("cumulative integral matches quadrature") {
  for (double x : {0.05, 0.3, 0.9, 1.0, 1.1, 2.0, 4.0, 8.0, 15.0, 25.0})
    CHECK(planck_cumulative(x) == doctest::Approx(planck_ref(x)).epsilon(1e-10));
}

TEST_CASE("group intensity matches direct quadrature of the spectrum") {
  PhysicalConstants pc;
  FrequencyGroupGrid grid = FrequencyGroupGrid::log_spaced(12, 1e-3, 50.0);
  for (double T : {0.3, 1.0, 3.0}) {
    for (int g = 0; g < grid.groups(); ++g) {
      const double lo = grid.lo(g), hi = grid.hi(g);
      const int n = 4000;
      double s = planck(lo, T, pc) + planck(hi, T, pc);
      const double h = (hi - lo) / n;
      for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * planck(lo + i * h, T, pc);
      const double ref = s * h / 3.0;
      const double got = group_planck(grid, g, T, pc);
      if (ref > 1e-300) CHECK(got == doctest::Approx(ref).epsilon(1e-8));
    }
  }
}

TEST_CASE("fractions and derivatives sum over a full-span grid") {
  PhysicalConstants pc;
  const double ac = pc.a * pc.c;
  FrequencyGroupGrid grid = FrequencyGroupGrid::log_spaced(50, 1e-6, 1e4);
  for (double T : {1e-3, 0.1, 1.0, 10.0}) {
    double sb = 0.0, sB = 0.0, sD = 0.0, sc = 0.0;
    for (int g = 0; g < grid.groups(); ++g) {
      sb += group_fraction(grid, g, T, pc);
      sB += group_planck(grid, g, T, pc);
      sD += group_planck_derivative(grid, g, T, pc);
      sc += group_derivative_coefficient(grid, g, T, pc);
    }
    CHECK(sb <= 1.0 + 1e-12);
    CHECK(sb >= 1.0 - 1e-8);
    CHECK(4.0 * pi * sB == doctest::Approx(ac * T * T * T * T).epsilon(1e-8));
    CHECK(4.0 * pi * sD == doctest::Approx(4.0 * ac * T * T * T).epsilon(1e-8));
    CHECK(sc == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("analytic derivative matches finite differences") {
  PhysicalConstants pc;
  FrequencyGroupGrid grid = FrequencyGroupGrid::log_spaced(20, 1e-4, 100.0);
  for (double T : {0.05, 0.2, 1.0, 4.0}) {
    const double h = 1e-5 * T;
    for (int g = 0; g < grid.groups(); ++g) {
      const double fd =
          (group_planck(grid, g, T + h, pc) - group_planck(grid, g, T - h, pc)) / (2.0 * h);
      const double an = group_planck_derivative(grid, g, T, pc);
      if (std::abs(fd) > 1e-250)
        CHECK(an == doctest::Approx(fd).epsilon(1e-6));
    }
  }
}

TEST_CASE("diffusion coefficient factor is the scaled derivative") {
  PhysicalConstants pc;
  const double ac = pc.a * pc.c;
  FrequencyGroupGrid grid = FrequencyGroupGrid::log_spaced(8, 1e-2, 30.0);
  for (double T : {0.4, 1.7}) {
    for (int g = 0; g < grid.groups(); ++g) {
      const double expect =
          pi * group_planck_derivative(grid, g, T, pc) / (ac * T * T * T);
      CHECK(group_derivative_coefficient(grid, g, T, pc) ==
            doctest::Approx(expect).epsilon(1e-12));
    }
  }
}
