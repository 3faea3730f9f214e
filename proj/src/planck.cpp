#include "rt/planck.hpp"

#include <cmath>
#include <stdexcept>

namespace rt {

FrequencyGroupGrid FrequencyGroupGrid::log_spaced(int groups, double e_min, double e_max) {
  if (groups < 1) throw std::invalid_argument("need at least one group");
  if (e_min <= 0.0 || e_max <= e_min) throw std::invalid_argument("bad group span");
  std::vector<double> edges(groups + 1);
  const double lmin = std::log(e_min), lmax = std::log(e_max);
  for (int i = 0; i <= groups; ++i)
    edges[i] = std::exp(lmin + (lmax - lmin) * i / groups);
  edges.front() = e_min;
  edges.back() = e_max;
  return FrequencyGroupGrid(std::move(edges));
}

namespace {

constexpr double pi4 = pi * pi * pi * pi;  // pi^4
constexpr double norm15 = 15.0 / pi4;

// Small-x expansion of \int_0^x t^3/(e^t - 1) dt:
// x^3/3 - x^4/8 + sum_k B_{2k} x^{2k+3} / ((2k+3)(2k)!).
double cumulative_small(double x) {
  static const double coef[] = {
      1.0 / 60.0,            // x^5
      -1.0 / 5040.0,         // x^7
      1.0 / 272160.0,        // x^9
      -1.0 / 13305600.0,     // x^11
      1.0 / 622702080.0,     // x^13
      -3.522793425791662e-11,   // x^15
      7.872080312167458e-13,    // x^17
      -1.784042261222412e-14,   // x^19
      4.088600979179926e-16,    // x^21
  };
  const double x2 = x * x;
  double sum = x * x2 * (1.0 / 3.0) - x2 * x2 * 0.125;
  double xp = x2 * x2 * x;  // x^5
  for (double ck : coef) {
    sum += ck * xp;
    xp *= x2;
  }
  return sum;
}

// Large-x tail: \int_x^inf t^3/(e^t-1) dt = sum_n e^{-nx} (x^3/n + 3x^2/n^2 + 6x/n^3 + 6/n^4).
double tail_large(double x) {
  const double x2 = x * x, x3 = x2 * x;
  double sum = 0.0;
  double enx = 1.0;
  const double ex = std::exp(-x);
  for (int n = 1; n <= 64; ++n) {
    enx *= ex;
    const double term = enx * (x3 / n + 3.0 * x2 / (n * n) + 6.0 * x / (n * n * n) +
                               6.0 / (double(n) * n * n * n));
    sum += term;
    if (term < 1e-16 * sum) break;
  }
  return sum;
}

}  // namespace

double planck_cumulative(double x) {
  if (x <= 0.0) return 0.0;
  if (x < 1.0) return norm15 * cumulative_small(x);
  return 1.0 - norm15 * tail_large(x);
}

double planck(double e, double T, const PhysicalConstants& pc) {
  if (e <= 0.0 || T <= 0.0) throw std::domain_error("planck: need e > 0, T > 0");
  const double x = e / T;
  // acT^4/(4pi) * (15/pi^4) * x^3/(e^x-1) * dx/de
  if (x > 700.0) return 0.0;
  return pc.a * pc.c / (4.0 * pi) * norm15 * e * e * e / std::expm1(x);
}

double group_planck(const FrequencyGroupGrid& grid, int g, double T,
                    const PhysicalConstants& pc) {
  if (T <= 0.0) throw std::domain_error("group_planck: need T > 0");
  const double T4 = T * T * T * T;
  const double p = planck_cumulative(grid.hi(g) / T) - planck_cumulative(grid.lo(g) / T);
  return pc.a * pc.c * T4 / (4.0 * pi) * p;
}

double group_fraction(const FrequencyGroupGrid& grid, int g, double T,
                      const PhysicalConstants& pc) {
  if (T <= 0.0) throw std::domain_error("group_fraction: need T > 0");
  (void)pc;
  return planck_cumulative(grid.hi(g) / T) - planck_cumulative(grid.lo(g) / T);
}

namespace {
double boundary_term(double x) {
  // x^4 / (e^x - 1), the integrand of the cumulative times x
  if (x <= 0.0) return 0.0;
  if (x > 700.0) return 0.0;
  return x * x * x * x / std::expm1(x);
}
}  // namespace

double group_planck_derivative(const FrequencyGroupGrid& grid, int g, double T,
                               const PhysicalConstants& pc) {
  if (T <= 0.0) throw std::domain_error("group_planck_derivative: need T > 0");
  const double x1 = grid.lo(g) / T, x2 = grid.hi(g) / T;
  const double Bg = group_planck(grid, g, T, pc);
  const double T3 = T * T * T;
  // d/dT [ (acT^4/4pi)(P(x2)-P(x1)) ], with dx/dT = -x/T.
  return 4.0 * Bg / T -
         pc.a * pc.c * T3 / (4.0 * pi) * norm15 * (boundary_term(x2) - boundary_term(x1));
}

double group_derivative_coefficient(const FrequencyGroupGrid& grid, int g, double T,
                                    const PhysicalConstants& pc) {
  // (b_g + (T/4) db_g/dT) = 4 pi dB_g/dT / (4 a c T^3)
  const double T3 = T * T * T;
  return pi * group_planck_derivative(grid, g, T, pc) / (pc.a * pc.c * T3);
}

}  // namespace rt
