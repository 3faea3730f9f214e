#include "rt/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace rt {

using nlohmann::json;

namespace {

json material_to_json(const MaterialSpec& ms) {
  return json{{"opacity", ms.opacity}, {"sigma0", ms.sigma0}, {"Cv", ms.Cv}};
}

MaterialSpec material_from_json(const json& j) {
  MaterialSpec ms;
  ms.opacity = j.value("opacity", ms.opacity);
  ms.sigma0 = j.value("sigma0", ms.sigma0);
  ms.Cv = j.value("Cv", ms.Cv);
  return ms;
}

OpacityModel::Kind opacity_kind(const std::string& name) {
  if (name == "constant") return OpacityModel::Kind::Constant;
  if (name == "t3_inverse") return OpacityModel::Kind::TCubedInverse;
  if (name == "pow3_sqrt") return OpacityModel::Kind::PowThreeSqrtT;
  if (name == "larsen") return OpacityModel::Kind::LarsenType;
  throw std::invalid_argument("unknown opacity model: " + name);
}

Material make_material(const MaterialSpec& ms) {
  if (ms.Cv <= 0.0) throw std::invalid_argument("material Cv must be positive");
  if (ms.sigma0 <= 0.0) throw std::invalid_argument("material sigma0 must be positive");
  return Material{OpacityModel(opacity_kind(ms.opacity), ms.sigma0), ms.Cv};
}

const char* side_names[4] = {"left", "right", "bottom", "top"};

}  // namespace

RunConfig parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("config parse error: ") + e.what());
  }
  RunConfig rc;
  const json& g = j.at("geometry");
  rc.dim = g.value("dim", 1);
  if (rc.dim == 1) {
    for (const json& r : g.at("regions")) {
      RegionSpec rs;
      rs.x0 = r.at("x0").get<double>();
      rs.x1 = r.at("x1").get<double>();
      rs.ncells = r.at("ncells").get<int>();
      rs.material = material_from_json(r);
      rc.regions.push_back(rs);
    }
  } else if (rc.dim == 2) {
    rc.x1 = g.at("x1").get<double>();
    rc.y1 = g.at("y1").get<double>();
    rc.nx = g.at("nx").get<int>();
    rc.ny = g.at("ny").get<int>();
    rc.background = material_from_json(g.at("background"));
    if (g.contains("boxes"))
      for (const json& b : g["boxes"]) {
        BoxSpec bs;
        bs.x0 = b.at("x0").get<double>();
        bs.x1 = b.at("x1").get<double>();
        bs.y0 = b.at("y0").get<double>();
        bs.y1 = b.at("y1").get<double>();
        bs.material = material_from_json(b);
        rc.boxes.push_back(bs);
      }
  } else {
    throw std::invalid_argument("geometry.dim must be 1 or 2");
  }

  if (j.contains("groups")) {
    const json& gr = j["groups"];
    if (gr.contains("edges")) {
      rc.group_edges = gr["edges"].get<std::vector<double>>();
    } else {
      rc.group_count = gr.value("count", 1);
      rc.group_min = gr.value("min", rc.group_min);
      rc.group_max = gr.value("max", rc.group_max);
      rc.group_log = gr.value("log", true);
    }
  }

  rc.T0 = j.value("T0", rc.T0);
  rc.dt = j.value("dt", rc.dt);
  rc.t_end = j.value("t_end", rc.t_end);
  rc.budget = j.value("budget", rc.budget);
  rc.seed = j.value("seed", rc.seed);
  rc.solver = j.value("solver", rc.solver);
  rc.theta_form = j.value("theta_form", rc.theta_form);
  rc.tilt = j.value("tilt", rc.tilt);
  rc.imc_tilt = j.value("imc_tilt", rc.imc_tilt);
  rc.census_roulette = j.value("census_roulette", rc.census_roulette);
  if (j.contains("picard")) {
    rc.picard_gamma = j["picard"].value("gamma", rc.picard_gamma);
    rc.picard_max_iter = j["picard"].value("max_iter", rc.picard_max_iter);
  }
  rc.snapshot_every = j.value("snapshot_every", rc.snapshot_every);
  rc.threads = j.value("threads", rc.threads);
  rc.snapshot_groups = j.value("snapshot_groups", rc.snapshot_groups);
  if (j.contains("lineouts_y")) rc.lineouts_y = j["lineouts_y"].get<std::vector<double>>();
  if (j.contains("boundaries"))
    for (int s = 0; s < 4; ++s)
      if (j["boundaries"].contains(side_names[s])) {
        const json& b = j["boundaries"][side_names[s]];
        rc.bc[s].kind = b.value("kind", rc.bc[s].kind);
        rc.bc[s].T = b.value("T", rc.bc[s].T);
      }

  if (rc.dt <= 0.0 || rc.t_end < 0.0 || rc.budget < 0 || rc.picard_gamma <= 0.0)
    throw std::invalid_argument("config: need dt > 0, t_end >= 0, budget >= 0, gamma > 0");
  return rc;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

std::string serialize_config(const RunConfig& rc) {
  json j;
  json g;
  g["dim"] = rc.dim;
  if (rc.dim == 1) {
    json regions = json::array();
    for (const RegionSpec& r : rc.regions) {
      json jr = material_to_json(r.material);
      jr["x0"] = r.x0;
      jr["x1"] = r.x1;
      jr["ncells"] = r.ncells;
      regions.push_back(jr);
    }
    g["regions"] = regions;
  } else {
    g["x1"] = rc.x1;
    g["y1"] = rc.y1;
    g["nx"] = rc.nx;
    g["ny"] = rc.ny;
    g["background"] = material_to_json(rc.background);
    json boxes = json::array();
    for (const BoxSpec& b : rc.boxes) {
      json jb = material_to_json(b.material);
      jb["x0"] = b.x0;
      jb["x1"] = b.x1;
      jb["y0"] = b.y0;
      jb["y1"] = b.y1;
      boxes.push_back(jb);
    }
    g["boxes"] = boxes;
  }
  j["geometry"] = g;
  if (!rc.group_edges.empty())
    j["groups"] = json{{"edges", rc.group_edges}};
  else
    j["groups"] = json{{"count", rc.group_count},
                       {"min", rc.group_min},
                       {"max", rc.group_max},
                       {"log", rc.group_log}};
  j["T0"] = rc.T0;
  j["dt"] = rc.dt;
  j["t_end"] = rc.t_end;
  j["budget"] = rc.budget;
  j["seed"] = rc.seed;
  j["solver"] = rc.solver;
  j["theta_form"] = rc.theta_form;
  j["tilt"] = rc.tilt;
  j["imc_tilt"] = rc.imc_tilt;
  j["census_roulette"] = rc.census_roulette;
  j["picard"] = json{{"gamma", rc.picard_gamma}, {"max_iter", rc.picard_max_iter}};
  j["snapshot_every"] = rc.snapshot_every;
  j["threads"] = rc.threads;
  j["snapshot_groups"] = rc.snapshot_groups;
  if (!rc.lineouts_y.empty()) j["lineouts_y"] = rc.lineouts_y;
  json bcs;
  for (int s = 0; s < 4; ++s)
    bcs[side_names[s]] = json{{"kind", rc.bc[s].kind}, {"T", rc.bc[s].T}};
  j["boundaries"] = bcs;
  return j.dump(2) + "\n";
}

Problem build_problem(const RunConfig& rc) {
  Problem pb;
  if (rc.dim == 1) {
    if (rc.regions.empty()) throw std::invalid_argument("config: 1D geometry needs regions");
    std::vector<Region1D> regions;
    for (std::size_t k = 0; k < rc.regions.size(); ++k) {
      pb.materials.push_back(make_material(rc.regions[k].material));
      regions.push_back({rc.regions[k].x0, rc.regions[k].x1, rc.regions[k].ncells,
                         static_cast<int>(k)});
    }
    pb.mesh = Mesh::build_1d(regions);
  } else {
    pb.materials.push_back(make_material(rc.background));
    std::vector<Box2D> boxes;
    for (std::size_t k = 0; k < rc.boxes.size(); ++k) {
      pb.materials.push_back(make_material(rc.boxes[k].material));
      boxes.push_back({rc.boxes[k].x0, rc.boxes[k].x1, rc.boxes[k].y0, rc.boxes[k].y1,
                       static_cast<int>(k + 1)});
    }
    pb.mesh = Mesh::build_2d(rc.x1, rc.y1, rc.nx, rc.ny, 0, boxes);
  }

  if (!rc.group_edges.empty())
    pb.grid = FrequencyGroupGrid(rc.group_edges);
  else if (rc.group_count == 1 && rc.group_log)
    pb.grid = FrequencyGroupGrid({rc.group_min, rc.group_max});
  else
    pb.grid = FrequencyGroupGrid::log_spaced(rc.group_count, rc.group_min, rc.group_max);

  for (int s = 0; s < 4; ++s) {
    const std::string& k = rc.bc[s].kind;
    if (k == "reflective")
      pb.bc[s] = {BoundaryKind::Reflective, 0.0};
    else if (k == "vacuum")
      pb.bc[s] = {BoundaryKind::Vacuum, 0.0};
    else if (k == "planck") {
      if (rc.bc[s].T <= 0.0) throw std::invalid_argument("planck boundary needs T > 0");
      pb.bc[s] = {BoundaryKind::Planck, rc.bc[s].T};
    } else {
      throw std::invalid_argument("unknown boundary kind: " + k);
    }
  }

  pb.T0 = rc.T0;
  pb.dt = rc.dt;
  pb.t_end = rc.t_end;
  pb.budget = rc.budget;
  pb.seed = rc.seed;
  if (rc.solver == "emc")
    pb.solver = SolverKind::Emc;
  else if (rc.solver == "imc")
    pb.solver = SolverKind::Imc;
  else if (rc.solver == "diffusion")
    pb.solver = SolverKind::Diffusion;
  else
    throw std::invalid_argument("unknown solver: " + rc.solver);
  if (rc.theta_form == "exp")
    pb.theta_form = ThetaForm::Exp;
  else if (rc.theta_form == "inv_exp")
    pb.theta_form = ThetaForm::InvExp;
  else
    throw std::invalid_argument("unknown theta_form: " + rc.theta_form);
  pb.tilt = rc.tilt;
  pb.imc_tilt = rc.imc_tilt;
  pb.census_roulette = rc.census_roulette;
  pb.picard_tol = rc.picard_gamma;
  pb.picard_max = rc.picard_max_iter;
  pb.threads = rc.threads;
  return pb;
}

std::vector<std::string> preset_names() {
  return {"infinite-medium", "marshak-thin",   "marshak-thick", "marshak-hetero-a",
          "marshak-hetero-b", "larsen", "hohlraum"};
}

RunConfig preset(const std::string& name, bool desk) {
  RunConfig rc;
  auto marshak_common = [&rc] {
    rc.group_count = 25;
    rc.group_min = 1e-3;
    rc.group_max = 100.0;
    rc.T0 = 1e-3;
    rc.bc[0] = {"planck", 1.0};
    rc.bc[1] = {"reflective", 0.0};
  };
  if (name == "infinite-medium") {
    rc.regions = {{0.0, 1.0, 50, {"t3_inverse", 300.0, 0.3}}};
    rc.T0 = 1.0;
    rc.dt = 0.0025;
    rc.t_end = 1.0;
    rc.budget = 2000000;
    if (desk) {
      rc.budget = 20000;
      rc.t_end = 0.1;
    }
  } else if (name == "marshak-thin" || name == "marshak-thick") {
    const double s0 = (name == "marshak-thin") ? 10.0 : 1000.0;
    marshak_common();
    rc.regions = {{0.0, 5.0, 1000, {"pow3_sqrt", s0, 0.1}}};
    rc.dt = 0.0025;
    rc.t_end = 1.0;
    rc.budget = 2000000;
    if (desk) {
      rc.regions[0].ncells = 250;
      rc.budget = 200000;
      rc.t_end = 0.3;
    }
  } else if (name == "marshak-hetero-a") {
    marshak_common();
    rc.regions = {{0.0, 2.0, 100, {"pow3_sqrt", 10.0, 0.1}},
                  {2.0, 3.0, 200, {"pow3_sqrt", 1000.0, 0.1}}};
    rc.dt = 0.00125;
    rc.t_end = 1.0;
    rc.budget = 2000000;
    if (desk) {
      rc.regions[0].ncells = 25;
      rc.regions[1].ncells = 50;
      rc.dt = 0.0025;
      rc.t_end = 0.3;
      rc.budget = 100000;
    }
  } else if (name == "marshak-hetero-b") {
    marshak_common();
    rc.regions = {{0.0, 0.5, 100, {"pow3_sqrt", 1000.0, 0.1}},
                  {0.5, 1.5, 50, {"pow3_sqrt", 10.0, 0.1}}};
    rc.dt = 0.00125;
    rc.t_end = 5.0;
    rc.budget = 2000000;
    if (desk) {
      rc.regions[0].ncells = 25;
      rc.regions[1].ncells = 20;
      rc.dt = 0.0025;
      rc.t_end = 0.5;
      rc.budget = 100000;
    }
  } else if (name == "larsen") {
    rc.regions = {{0.0, 2.0, 10, {"larsen", 1.0, 0.05109}},
                  {2.0, 3.0, 50, {"larsen", 1000.0, 0.05109}},
                  {3.0, 4.0, 10, {"larsen", 1.0, 0.05109}}};
    rc.group_count = 50;
    rc.group_min = 1e-5;
    rc.group_max = 10.0;
    rc.T0 = 1e-3;
    rc.bc[0] = {"planck", 1.0};
    rc.bc[1] = {"reflective", 0.0};
    rc.dt = 0.005;
    rc.t_end = 0.9;
    rc.budget = 2000000;
    if (desk) {
      rc.regions[1].ncells = 20;
      rc.t_end = 0.3;
      rc.budget = 100000;
    }
  } else if (name == "hohlraum") {
    rc.dim = 2;
    rc.x1 = 1.4;
    rc.y1 = 0.65;
    rc.nx = 280;
    rc.ny = 130;
    rc.background = {"constant", 1e-8, 1e-4};
    const MaterialSpec wall{"larsen", 1000.0, 0.3};
    rc.boxes = {{0.10, 0.15, 0.0, 0.45, wall},
                {0.55, 0.95, 0.0, 0.45, wall},
                {0.10, 1.40, 0.60, 0.65, wall},
                {1.35, 1.40, 0.0, 0.65, wall}};
    rc.group_count = 50;
    rc.group_min = 1e-5;
    rc.group_max = 10.0;
    rc.T0 = 1e-3;
    rc.bc[0] = {"planck", 0.3};
    rc.bc[1] = {"planck", 1e-3};
    rc.bc[2] = {"reflective", 0.0};
    rc.bc[3] = {"planck", 1e-3};
    rc.dt = 0.0025;
    rc.t_end = 10.0;
    rc.budget = 6000000;
    rc.lineouts_y = {0.45, 0.65};
    if (desk) {
      rc.nx = 56;
      rc.ny = 26;
      rc.dt = 0.005;
      rc.t_end = 0.1;
      rc.budget = 100000;
    }
  } else {
    throw std::invalid_argument("unknown preset: " + name);
  }
  return rc;
}

}  // namespace rt
