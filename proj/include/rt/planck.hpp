#pragma once

#include "rt/constants.hpp"
#include "rt/group_grid.hpp"

namespace rt {

// Normalized cumulative Planck integral P(x) = (15/pi^4) \int_0^x t^3/(e^t - 1) dt,
// so P(0) = 0 and P(inf) = 1.
double planck_cumulative(double x);

// Spectral intensity B(e, T) [GJ/cm^2/ns/keV/sr], normalized so that
// \int_0^inf B de = a c T^4 / (4 pi).
double planck(double e, double T, const PhysicalConstants& pc = {});

// Group-integrated intensity B_g = \int_{e_lo}^{e_hi} B de [GJ/cm^2/ns/sr].
double group_planck(const FrequencyGroupGrid& grid, int g, double T,
                    const PhysicalConstants& pc = {});

// b_g = 4 pi B_g / (a c T^4); sums to 1 over a full-span grid (up to cutoff truncation).
double group_fraction(const FrequencyGroupGrid& grid, int g, double T,
                      const PhysicalConstants& pc = {});

// Analytic dB_g/dT [GJ/cm^2/ns/sr/keV].
double group_planck_derivative(const FrequencyGroupGrid& grid, int g, double T,
                               const PhysicalConstants& pc = {});

// The diffusion-coefficient factor (b_g + (T/4) db_g/dT) = pi dB_g/dT / (a c T^3).
double group_derivative_coefficient(const FrequencyGroupGrid& grid, int g, double T,
                                    const PhysicalConstants& pc = {});

}  // namespace rt
