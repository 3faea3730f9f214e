#pragma once

#include <vector>

#include "rt/constants.hpp"
#include "rt/group_grid.hpp"
#include "rt/mesh.hpp"
#include "rt/tally.hpp"

namespace rt {

enum class ThetaForm { Exp, InvExp };

// Interface weight theta in [0, 1]; both forms agree in the thin (->1) and
// thick (->0) limits.
double weight_theta(double sigma, double c, double dt, ThetaForm form);

// D = (1 - theta_ij) * (1/(3 sigma_ij)) * (1 - e^{-c sigma_ij dt}) * coeff_ij.
double diffusion_coefficient(double theta_ij, double sigma_ij, double c, double dt,
                             double coeff_ij);

// Per-(cell, group) fields evaluated at the given cell temperatures.
std::vector<double> opacity_field(const Mesh& mesh, const std::vector<Material>& mats,
                                  const FrequencyGroupGrid& grid,
                                  const std::vector<double>& T);
std::vector<double> planck_fraction_field(const FrequencyGroupGrid& grid,
                                          const std::vector<double>& T,
                                          const PhysicalConstants& pc = {});
std::vector<double> planck_coeff_field(const FrequencyGroupGrid& grid,
                                       const std::vector<double>& T,
                                       const PhysicalConstants& pc = {});

struct MacroConfig {
  PhysicalConstants pc;
  ThetaForm theta_form = ThetaForm::Exp;
  double picard_tol = 1e-8;   // L1 norm of the temperature increment
  int picard_max = 50;
  double newton_tol = 1e-12;
  int newton_max = 100;
};

struct MacroInput {
  const Mesh* mesh = nullptr;
  const FrequencyGroupGrid* grid = nullptr;
  const std::vector<Material>* materials = nullptr;
  const BoundaryCond* bc = nullptr;  // 4 sides
  double dt = 0.0;
  const std::vector<double>* rho_n = nullptr;  // (cell, group) at t^n
  const std::vector<double>* T_n = nullptr;    // per cell at t^n
  // Raw particle-weight flux sums from the pre-emission tracking phase.
  const TallySet* tallies = nullptr;
};

struct MacroResult {
  std::vector<double> T;      // T^{n+1}
  std::vector<double> rho;    // (cell, group) rho^{n+1}
  std::vector<double> sigma;  // sigma_g(T^{n+1})
  std::vector<double> b;      // b_g(T^{n+1})
  int picard_iters = 0;
  double last_increment = 0.0;
  int floor_clamps = 0;  // cells pinned to the temperature floor this solve
};

// Positive root of the per-cell correction equation
//   t + (a/Cv) * sum_g chi_g b_g(t) t^4 = A,  A > 0,
// by Newton iteration with halved steps on sign violations; `chi` holds G
// entries. Throws on nonconvergence.
double correction_root(const FrequencyGroupGrid& grid, const double* chi, int G, double Cv,
                       double A, double t0, const MacroConfig& cfg);

// Predictor-corrector Picard solve of the coupled (rho_g, T) system for one
// time step. Throws on Picard/Newton/linear-solver nonconvergence.
MacroResult picard_solve(const MacroInput& in, const MacroConfig& cfg);

}  // namespace rt
