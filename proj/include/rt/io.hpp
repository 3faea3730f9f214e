#pragma once

#include <string>
#include <vector>

#include "rt/config.hpp"
#include "rt/problem.hpp"

namespace rt {

// CSV snapshot with full round-trip precision.
// 1D columns: x_center,T_material,T_radiation[,rho_0..rho_{G-1}]
// 2D columns: x_center,y_center,T_material,T_radiation[,rho_...]; each requested
// lineout row is additionally written to "<stem>_y<value>.csv" in 1D layout.
void write_snapshot(const std::string& path, const Problem& pb, const SimState& st,
                    bool include_groups, const std::vector<double>& lineouts_y = {});

struct ReplicaStats {
  std::vector<double> mean_T, var_T;    // per cell, across replicas
  std::vector<double> mean_Tr, var_Tr;
  double wall_seconds = 0.0;            // total over all replicas
  int replicas = 0;
  // 1 / (mean cell variance * wall seconds); infinity when the variance is 0
  double fom_T = 0.0, fom_Tr = 0.0;
};

// Runs `replicas` independent simulations (seed, seed+1, ...) of the config.
ReplicaStats figure_of_merit(const RunConfig& rc, int replicas);

// Per-cell mean/variance table plus a trailing summary row with the FOM values.
void write_fom_csv(const std::string& path, const Problem& pb, const ReplicaStats& rs);

// Writes "<stem>.gp", a gnuplot script rendering the snapshot CSV at `csv_path`.
void write_plot_script(const std::string& csv_path, int dim);

}  // namespace rt
