#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "rt/config.hpp"

using namespace rt;

namespace {

void check_equal(const RunConfig& a, const RunConfig& b) {
  CHECK(a.dim == b.dim);
  REQUIRE(a.regions.size() == b.regions.size());
  for (std::size_t i = 0; i < a.regions.size(); ++i) {
    CHECK(a.regions[i].x0 == b.regions[i].x0);
    CHECK(a.regions[i].x1 == b.regions[i].x1);
    CHECK(a.regions[i].ncells == b.regions[i].ncells);
    CHECK(a.regions[i].material.opacity == b.regions[i].material.opacity);
    CHECK(a.regions[i].material.sigma0 == b.regions[i].material.sigma0);
    CHECK(a.regions[i].material.Cv == b.regions[i].material.Cv);
  }
  CHECK(a.nx == b.nx);
  CHECK(a.ny == b.ny);
  CHECK(a.x1 == b.x1);
  CHECK(a.y1 == b.y1);
  REQUIRE(a.boxes.size() == b.boxes.size());
  for (std::size_t i = 0; i < a.boxes.size(); ++i) {
    CHECK(a.boxes[i].x0 == b.boxes[i].x0);
    CHECK(a.boxes[i].y1 == b.boxes[i].y1);
    CHECK(a.boxes[i].material.sigma0 == b.boxes[i].material.sigma0);
  }
  CHECK(a.group_count == b.group_count);
  CHECK(a.group_min == b.group_min);
  CHECK(a.group_max == b.group_max);
  CHECK(a.group_edges == b.group_edges);
  CHECK(a.T0 == b.T0);
  CHECK(a.dt == b.dt);
  CHECK(a.t_end == b.t_end);
  CHECK(a.budget == b.budget);
  CHECK(a.seed == b.seed);
  CHECK(a.solver == b.solver);
  CHECK(a.theta_form == b.theta_form);
  CHECK(a.tilt == b.tilt);
  CHECK(a.imc_tilt == b.imc_tilt);
  CHECK(a.census_roulette == b.census_roulette);
  CHECK(a.picard_gamma == b.picard_gamma);
  CHECK(a.picard_max_iter == b.picard_max_iter);
  CHECK(a.snapshot_every == b.snapshot_every);
  CHECK(a.threads == b.threads);
  CHECK(a.lineouts_y == b.lineouts_y);
  for (int s = 0; s < 4; ++s) {
    CHECK(a.bc[s].kind == b.bc[s].kind);
    CHECK(a.bc[s].T == b.bc[s].T);
  }
}

}  // namespace

TEST_CASE("serialization round trips every preset") {
  for (const std::string& name : preset_names())
    for (bool desk : {false, true}) {
      const RunConfig rc = preset(name, desk);
      check_equal(rc, parse_config_text(serialize_config(rc)));
    }
}

TEST_CASE("invalid configs are rejected with clear errors") {
  const RunConfig ok = preset("infinite-medium", true);
  {
    RunConfig rc = ok;
    rc.solver = "magic";
    CHECK_THROWS_AS((void)build_problem(rc), std::invalid_argument);
  }
  {
    RunConfig rc = ok;
    rc.theta_form = "quadratic";
    CHECK_THROWS_AS((void)build_problem(rc), std::invalid_argument);
  }
  {
    RunConfig rc = ok;
    rc.bc[0].kind = "slippery";
    CHECK_THROWS_AS((void)build_problem(rc), std::invalid_argument);
  }
  {
    RunConfig rc = ok;
    rc.regions[0].material.opacity = "mystery";
    CHECK_THROWS_AS((void)build_problem(rc), std::invalid_argument);
  }
  CHECK_THROWS_AS((void)parse_config_text("{ not json"), std::invalid_argument);
  CHECK_THROWS_AS((void)parse_config_text(R"({"geometry":{"dim":3}})"),
                  std::invalid_argument);
  std::string bad_dt = serialize_config(ok);
  RunConfig rc = ok;
  rc.dt = -1.0;
  CHECK_THROWS_AS((void)parse_config_text(serialize_config(rc)), std::invalid_argument);
  CHECK_THROWS_AS((void)parse_config_file("/nonexistent/path.json"),
                  std::invalid_argument);
}

TEST_CASE("unknown preset name throws") {
  CHECK_THROWS_AS((void)preset("warp-drive", false), std::invalid_argument);
}

TEST_CASE("problem construction matches the preset geometry") {
  {
    const Problem pb = build_problem(preset("infinite-medium", false));
    CHECK(pb.mesh.ncells() == 50);
    CHECK(pb.grid.groups() == 1);
    CHECK(pb.bc[0].kind == BoundaryKind::Reflective);
    CHECK(pb.materials[0].opacity.kind() == OpacityModel::Kind::TCubedInverse);
    CHECK(pb.T0 == 1.0);
  }
  {
    const Problem pb = build_problem(preset("marshak-thick", false));
    CHECK(pb.mesh.ncells() == 1000);
    CHECK(pb.grid.groups() == 25);
    CHECK(pb.bc[0].kind == BoundaryKind::Planck);
    CHECK(pb.bc[0].T == 1.0);
    CHECK(pb.materials[0].opacity.sigma0() == 1000.0);
  }
  {
    const Problem pb = build_problem(preset("larsen", false));
    CHECK(pb.mesh.ncells() == 70);
    CHECK(pb.grid.groups() == 50);
    CHECK(pb.mesh.dx(0) == doctest::Approx(0.2));
    CHECK(pb.mesh.dx(15) == doctest::Approx(0.02));
    CHECK(pb.mesh.dx(65) == doctest::Approx(0.1));
  }
  {
    const Problem pb = build_problem(preset("larsen", true));
    CHECK(pb.mesh.ncells() == 40);
  }
  {
    const Problem pb = build_problem(preset("hohlraum", true));
    CHECK(pb.mesh.dim() == 2);
    CHECK(pb.mesh.ncells() == 56 * 26);
    CHECK(pb.materials.size() == 5);
    CHECK(pb.bc[0].kind == BoundaryKind::Planck);
    CHECK(pb.bc[2].kind == BoundaryKind::Reflective);
    CHECK(pb.solver == SolverKind::Emc);
  }
  {
    RunConfig rc = preset("marshak-thin", true);
    rc.solver = "imc";
    rc.theta_form = "inv_exp";
    const Problem pb = build_problem(rc);
    CHECK(pb.solver == SolverKind::Imc);
    CHECK(pb.theta_form == ThetaForm::InvExp);
  }
}

TEST_CASE("explicit group edges override the log grid") {
  RunConfig rc = preset("infinite-medium", true);
  rc.group_edges = {0.1, 1.0, 10.0};
  const Problem pb = build_problem(rc);
  CHECK(pb.grid.groups() == 2);
  CHECK(pb.grid.lo(0) == 0.1);
  CHECK(pb.grid.hi(1) == 10.0);
  check_equal(rc, parse_config_text(serialize_config(rc)));
}
