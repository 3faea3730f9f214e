#pragma once

#include <vector>

#include "rt/group_grid.hpp"

namespace rt {

// Absorption opacity sigma(e, T) [1/cm] and its flat group averages.
class OpacityModel {
 public:
  enum class Kind {
    Constant,        // sigma0
    TCubedInverse,   // sigma0 / T^3 (frequency independent)
    PowThreeSqrtT,   // sigma0 / (e^3 sqrt(T))
    LarsenType,      // sigma0 (1 - exp(-e/T)) / e^3
  };

  OpacityModel(Kind kind, double sigma0) : kind_(kind), sigma0_(sigma0) {}

  Kind kind() const { return kind_; }
  double sigma0() const { return sigma0_; }

  // Pointwise sigma(e, T).
  double at(double e, double T) const;

  // Flat group average sigma_g = (1/(e2-e1)) \int_{e1}^{e2} sigma(e,T) de,
  // evaluated in closed form for every variant.
  double group_average(const FrequencyGroupGrid& grid, int g, double T) const;

 private:
  Kind kind_;
  double sigma0_;
};

// Discrete Rosseland mean: 1/sigma_R = sum_g (1/sigma_g) w_g / sum_g w_g,
// weights w_g = dB_g/dT.
double rosseland_mean(const std::vector<double>& sigma_g, const std::vector<double>& dBdT_g);

}  // namespace rt
