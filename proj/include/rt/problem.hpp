#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "rt/group_grid.hpp"
#include "rt/macro.hpp"
#include "rt/mesh.hpp"
#include "rt/tally.hpp"

namespace rt {

enum class SolverKind { Emc, Imc, Diffusion };

struct Problem {
  Mesh mesh;
  std::vector<Material> materials;
  FrequencyGroupGrid grid = FrequencyGroupGrid::full_span();
  BoundaryCond bc[4];
  PhysicalConstants pc;
  double T0 = 1e-3;      // uniform initial temperature [keV]
  double dt = 0.0025;    // ns
  double t_end = 1.0;    // ns
  long long budget = 0;  // particles per step
  std::uint64_t seed = 1;
  SolverKind solver = SolverKind::Emc;
  ThetaForm theta_form = ThetaForm::Exp;
  bool tilt = true;       // emission-source tilting (transport-macro solver)
  bool imc_tilt = false;  // tilting in the effective-scattering baseline
  double picard_tol = 1e-8;
  int picard_max = 50;
  double newton_tol = 1e-12;
  int newton_max = 100;
  int threads = 1;
  bool census_roulette = false;
  double weight_cutoff = 1e-4;
};

struct SimState {
  double t = 0.0;
  std::uint64_t step = 0;  // completed steps
  std::vector<double> T;   // material temperature per cell
  std::vector<double> Tr;  // radiation temperature per cell
  std::vector<double> rho;  // (cell, group)
  std::vector<Particle> census;
  // cumulative diagnostics
  double injected = 0.0;  // boundary-source energy given to real particles [GJ]
  double leaked = 0.0;    // [GJ]
  int floor_warnings = 0;
};

struct StepReport {
  TallySet tallies;
  int picard_iters = 0;
  double dt = 0.0;
  // max over groups of the relative per-group ledger imbalance
  // |sampled - absorbed - census - leaked| / sampled
  double conservation_error = 0.0;
};

// Equilibrium initial state: T = T0, rho_g = a c T0^4 b_g(T0), census particles
// sampled from the per-(cell, group) census energies with the full budget.
SimState init_state(const Problem& pb);

StepReport emc_step(const Problem& pb, SimState& st, double dt);
StepReport imc_step(const Problem& pb, SimState& st, double dt);

// One backward-Euler step of the equilibrium-diffusion limit equation
// a d(T^4)/dt + Cv dT/dt = div( ac/(3 sigma_R) grad T^4 ), solved by damped
// Newton with face conductances lagged over outer sweeps.
std::vector<double> diffusion_step(const Problem& pb, const std::vector<double>& T_n,
                                   double dt, int* iters_out = nullptr);

// Advance to pb.t_end (shortening the final step), calling `on_step` after
// each step if provided.
void run_simulation(const Problem& pb, SimState& st,
                    const std::function<void(const SimState&, const StepReport&)>& on_step = {});

}  // namespace rt
