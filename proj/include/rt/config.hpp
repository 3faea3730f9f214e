#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rt/problem.hpp"

namespace rt {

struct MaterialSpec {
  std::string opacity = "constant";  // constant | t3_inverse | pow3_sqrt | larsen
  double sigma0 = 1.0;
  double Cv = 1.0;
};

struct RegionSpec {  // 1D
  double x0 = 0.0, x1 = 1.0;
  int ncells = 1;
  MaterialSpec material;
};

struct BoxSpec {  // 2D override box
  double x0 = 0.0, x1 = 0.0, y0 = 0.0, y1 = 0.0;
  MaterialSpec material;
};

struct BoundarySpec {
  std::string kind = "reflective";  // reflective | vacuum | planck
  double T = 0.0;
};

struct RunConfig {
  int dim = 1;
  std::vector<RegionSpec> regions;  // 1D geometry
  // 2D geometry
  double x1 = 0.0, y1 = 0.0;
  int nx = 0, ny = 0;
  MaterialSpec background;
  std::vector<BoxSpec> boxes;

  int group_count = 1;
  double group_min = 1e-6, group_max = 1e4;
  bool group_log = true;
  std::vector<double> group_edges;  // explicit edges override when nonempty

  double T0 = 1e-3;
  double dt = 0.0025;
  double t_end = 1.0;
  long long budget = 0;
  std::uint64_t seed = 1;
  std::string solver = "emc";          // emc | imc | diffusion
  std::string theta_form = "exp";      // exp | inv_exp
  bool tilt = true;
  bool imc_tilt = false;
  bool census_roulette = false;
  double picard_gamma = 1e-8;
  int picard_max_iter = 50;
  int snapshot_every = 0;  // steps between snapshots; 0 = final only
  int threads = 1;
  bool snapshot_groups = false;        // include per-group densities in CSV
  std::vector<double> lineouts_y;      // 2D lineout rows
  BoundarySpec bc[4];                  // left, right, bottom, top
};

RunConfig parse_config_file(const std::string& path);  // throws on bad config
RunConfig parse_config_text(const std::string& text);
std::string serialize_config(const RunConfig& rc);

// Paper-scale benchmark parameters; `desk` swaps in the reduced CI profile.
// Names: infinite-medium, marshak-thin, marshak-thick, marshak-hetero-a,
// marshak-hetero-b, larsen, hohlraum.
RunConfig preset(const std::string& name, bool desk);
std::vector<std::string> preset_names();

Problem build_problem(const RunConfig& rc);

}  // namespace rt
