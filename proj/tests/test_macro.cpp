#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "rt/macro.hpp"
#include "rt/planck.hpp"

using namespace rt;

namespace {

struct Setup {
  Mesh mesh;
  std::vector<Material> mats;
  FrequencyGroupGrid grid;
  BoundaryCond bc[4];
  TallySet tal;
  std::vector<double> T, rho;

  Setup(int ncells, double length, OpacityModel op, double Cv, int groups, double T0)
      : mesh(Mesh::build_1d({{0.0, length, ncells, 0}})),
        mats{{op, Cv}},
        grid(groups == 1 ? FrequencyGroupGrid::full_span()
                         : FrequencyGroupGrid::log_spaced(groups, 1e-4, 100.0)),
        tal(ncells, grid.groups(), mesh.nfaces()) {
    PhysicalConstants pc;
    T.assign(ncells, T0);
    rho.assign(std::size_t(ncells) * grid.groups(), 0.0);
    for (int i = 0; i < ncells; ++i)
      for (int g = 0; g < grid.groups(); ++g)
        rho[std::size_t(i) * grid.groups() + g] =
            pc.a * pc.c * std::pow(T0, 4) * group_fraction(grid, g, T0, pc);
  }

  MacroInput input(double dt) {
    MacroInput in;
    in.mesh = &mesh;
    in.grid = &grid;
    in.materials = &mats;
    in.bc = bc;
    in.dt = dt;
    in.rho_n = &rho;
    in.T_n = &T;
    in.tallies = &tal;
    return in;
  }
};

}  // namespace

TEST_CASE("interface weight limits") {
  const double c = 29.98, dt = 0.0025;
  for (ThetaForm f : {ThetaForm::Exp, ThetaForm::InvExp}) {
    CHECK(weight_theta(1e-12, c, dt, f) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(weight_theta(1e9, c, dt, f) == doctest::Approx(0.0).epsilon(1e-6));
    const double th = weight_theta(5.0, c, dt, f);
    CHECK(th > 0.0);
    CHECK(th < 1.0);
  }
  CHECK(weight_theta(5.0, c, dt, ThetaForm::Exp) ==
        doctest::Approx(std::exp(-c * 5.0 * dt)).epsilon(1e-14));
  CHECK(weight_theta(5.0, c, dt, ThetaForm::InvExp) ==
        doctest::Approx(1.0 - std::exp(-1.0 / (c * 5.0 * dt))).epsilon(1e-14));
}

TEST_CASE("diffusion coefficient closed form") {
  const double th = 0.3, sig = 4.0, c = 29.98, dt = 0.01, coeff = 0.8;
  CHECK(diffusion_coefficient(th, sig, c, dt, coeff) ==
        doctest::Approx((1.0 - th) / (3.0 * sig) * (1.0 - std::exp(-c * sig * dt)) * coeff)
            .epsilon(1e-14));
}

TEST_CASE("per-cell fields have the right shape and values") {
  Setup s(3, 1.0, OpacityModel(OpacityModel::Kind::TCubedInverse, 300.0), 0.3, 1, 0.5);
  const auto sig = opacity_field(s.mesh, s.mats, s.grid, s.T);
  REQUIRE(sig.size() == 3);
  CHECK(sig[0] == doctest::Approx(300.0 / 0.125).epsilon(1e-12));
  const auto b = planck_fraction_field(s.grid, s.T);
  CHECK(b[0] == doctest::Approx(1.0).epsilon(1e-8));
  const auto cf = planck_coeff_field(s.grid, s.T);
  CHECK(cf[1] == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("uniform equilibrium is a fixed point") {
  for (int groups : {1, 8}) {
    Setup s(10, 1.0, OpacityModel(OpacityModel::Kind::TCubedInverse, 300.0), 0.3, groups,
            1.0);
    s.bc[0].kind = s.bc[1].kind = BoundaryKind::Reflective;
    MacroConfig cfg;
    const MacroResult r = picard_solve(s.input(0.0025), cfg);
    CHECK(r.picard_iters <= 50);
    for (int i = 0; i < 10; ++i) CHECK(r.T[i] == doctest::Approx(1.0).epsilon(1e-10));
    for (std::size_t k = 0; k < r.rho.size(); ++k)
      CHECK(r.rho[k] == doctest::Approx(s.rho[k]).epsilon(1e-8));
  }
}

TEST_CASE("radiation above equilibrium heats the material") {
  Setup s(4, 1.0, OpacityModel(OpacityModel::Kind::Constant, 20.0), 0.3, 1, 0.5);
  s.bc[0].kind = s.bc[1].kind = BoundaryKind::Reflective;
  for (auto& v : s.rho) v *= 4.0;  // radiation field hotter than the material
  MacroConfig cfg;
  const MacroResult r = picard_solve(s.input(0.0025), cfg);
  for (int i = 0; i < 4; ++i) CHECK(r.T[i] > 0.5);
  // and symmetrically, depleted radiation cools it
  Setup s2(4, 1.0, OpacityModel(OpacityModel::Kind::Constant, 20.0), 0.3, 1, 0.5);
  s2.bc[0].kind = s2.bc[1].kind = BoundaryKind::Reflective;
  for (auto& v : s2.rho) v *= 0.25;
  const MacroResult r2 = picard_solve(s2.input(0.0025), cfg);
  for (int i = 0; i < 4; ++i) CHECK(r2.T[i] < 0.5);
}

TEST_CASE("uniform state stays uniform under both interface weight forms") {
  for (ThetaForm f : {ThetaForm::Exp, ThetaForm::InvExp}) {
    Setup s(6, 2.0, OpacityModel(OpacityModel::Kind::Constant, 5.0), 0.1, 4, 0.8);
    s.bc[0].kind = s.bc[1].kind = BoundaryKind::Reflective;
    for (auto& v : s.rho) v *= 1.5;
    MacroConfig cfg;
    cfg.theta_form = f;
    const MacroResult r = picard_solve(s.input(0.001), cfg);
    for (int i = 1; i < 6; ++i) CHECK(r.T[i] == doctest::Approx(r.T[0]).epsilon(1e-12));
  }
}

TEST_CASE("hot boundary drives the adjacent cell") {
  Setup s(8, 1.0, OpacityModel(OpacityModel::Kind::Constant, 100.0), 0.1, 1, 0.01);
  s.bc[0].kind = BoundaryKind::Planck;
  s.bc[0].T = 1.0;
  s.bc[1].kind = BoundaryKind::Reflective;
  MacroConfig cfg;
  const MacroResult r = picard_solve(s.input(0.0025), cfg);
  CHECK(r.T[0] > s.T[0]);
  for (int i = 1; i < 8; ++i) CHECK(r.T[i - 1] >= r.T[i] - 1e-15);  // monotone decay inward
  CHECK(r.picard_iters <= 50);
}

TEST_CASE("vacuum boundary cools the edge cell") {
  Setup s(8, 1.0, OpacityModel(OpacityModel::Kind::Constant, 10.0), 0.1, 1, 0.8);
  s.bc[0].kind = BoundaryKind::Vacuum;
  s.bc[1].kind = BoundaryKind::Reflective;
  MacroConfig cfg;
  const MacroResult r = picard_solve(s.input(0.0025), cfg);
  CHECK(r.T[0] < r.T[7]);
  CHECK(r.T[0] < 0.8);
}
