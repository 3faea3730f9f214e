#include "rt/opacity.hpp"

#include <cmath>
#include <stdexcept>

namespace rt {

namespace {

// W(x) = \int_x^inf (1 - e^{-u}) / u^3 du.
// For x >= 1/2 use W(x) = (1/2 - E3(x)) / x^2 with the exponential-integral
// recurrence; below that the subtraction cancels, so switch to a series.
double larsen_tail(double x) {
  if (x >= 0.5) {
    double e3 = 0.0;
    if (x < 700.0) {
      const double ex = std::exp(-x);
      const double e1 = -std::expint(-x);
      const double e2 = ex - x * e1;
      e3 = 0.5 * (ex - x * e2);
    }
    return (0.5 - e3) / (x * x);
  }
  // W(x) = W(1/2) + \int_x^{1/2} (u^{-2} - u^{-1}/2 + sum_{k>=3} (-1)^{k+1} u^{k-3}/k!) du
  static const double w_half = [] {
    const double ex = std::exp(-0.5);
    const double e1 = -std::expint(-0.5);
    const double e2 = ex - 0.5 * e1;
    const double e3 = 0.5 * (ex - 0.5 * e2);
    return (0.5 - e3) * 4.0;
  }();
  double sum = w_half + (1.0 / x - 2.0) - 0.5 * std::log(0.5 / x);
  double kfact = 2.0;  // k!
  double hp = 1.0, xp = 1.0;  // 0.5^{k-2}, x^{k-2}
  double sign = 1.0;          // (-1)^{k+1} for k = 3
  for (int k = 3; k <= 20; ++k) {
    kfact *= k;
    hp *= 0.5;
    xp *= x;
    sum += sign * (hp - xp) / ((k - 2) * kfact);
    sign = -sign;
  }
  return sum;
}

}  // namespace

double OpacityModel::at(double e, double T) const {
  if (e <= 0.0 || T <= 0.0) throw std::domain_error("opacity: need e > 0, T > 0");
  switch (kind_) {
    case Kind::Constant:
      return sigma0_;
    case Kind::TCubedInverse:
      return sigma0_ / (T * T * T);
    case Kind::PowThreeSqrtT:
      return sigma0_ / (e * e * e * std::sqrt(T));
    case Kind::LarsenType:
      return sigma0_ * -std::expm1(-e / T) / (e * e * e);
  }
  return 0.0;
}

double OpacityModel::group_average(const FrequencyGroupGrid& grid, int g, double T) const {
  if (T <= 0.0) throw std::domain_error("opacity: need T > 0");
  const double e1 = grid.lo(g), e2 = grid.hi(g), de = grid.width(g);
  switch (kind_) {
    case Kind::Constant:
      return sigma0_;
    case Kind::TCubedInverse:
      return sigma0_ / (T * T * T);
    case Kind::PowThreeSqrtT:
      // \int e^{-3} de = -1/(2 e^2)
      return sigma0_ / std::sqrt(T) * (1.0 / (2.0 * e1 * e1) - 1.0 / (2.0 * e2 * e2)) / de;
    case Kind::LarsenType:
      // substitute u = e/T: (sigma0/T^2) (W(x1) - W(x2)) / de
      return sigma0_ / (T * T) * (larsen_tail(e1 / T) - larsen_tail(e2 / T)) / de;
  }
  return 0.0;
}

double rosseland_mean(const std::vector<double>& sigma_g, const std::vector<double>& dBdT_g) {
  double num = 0.0, den = 0.0;
  for (std::size_t g = 0; g < sigma_g.size(); ++g) {
    if (sigma_g[g] <= 0.0) throw std::domain_error("rosseland_mean: need sigma_g > 0");
    num += dBdT_g[g] / sigma_g[g];
    den += dBdT_g[g];
  }
  return den / num;
}

}  // namespace rt
