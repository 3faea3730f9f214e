#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "rt/io.hpp"

using namespace rt;

namespace {

std::vector<std::vector<double>> read_csv(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::string line;
  std::getline(in, line);  // header
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) row.push_back(std::stod(tok));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST_CASE("1d snapshot round trips at full precision") {
  Problem pb;
  pb.mesh = Mesh::build_1d({{0.0, 1.0, 4, 0}});
  pb.materials = {{OpacityModel(OpacityModel::Kind::Constant, 1.0), 0.1}};
  pb.grid = FrequencyGroupGrid::log_spaced(2, 0.1, 10.0);
  SimState st;
  st.T = {0.1234567890123456, 1.0 / 3.0, 0.7, 1e-6};
  st.Tr = {0.2, 0.3, 0.4, 0.5};
  st.rho = {1e-30, 2.0, 3.0, 4.5, 5.0, 6.0, 7.0, 1.0 / 7.0};
  const std::string path = "snap_test_1d.csv";
  write_snapshot(path, pb, st, true);
  const auto rows = read_csv(path);
  REQUIRE(rows.size() == 4);
  REQUIRE(rows[0].size() == 5);  // x, T, Tr, rho_0, rho_1
  for (int i = 0; i < 4; ++i) {
    CHECK(rows[i][0] == pb.mesh.cx(i));
    CHECK(rows[i][1] == st.T[i]);
    CHECK(rows[i][2] == st.Tr[i]);
    CHECK(rows[i][3] == st.rho[2 * i]);
    CHECK(rows[i][4] == st.rho[2 * i + 1]);
  }
  write_plot_script(path, 1);
  std::ifstream gp("snap_test_1d.gp");
  CHECK(gp.good());
  std::remove(path.c_str());
  std::remove("snap_test_1d.gp");
}

TEST_CASE("2d snapshot writes the grid and lineout files") {
  Problem pb;
  pb.mesh = Mesh::build_2d(1.0, 0.5, 4, 2, 0, {});
  pb.materials = {{OpacityModel(OpacityModel::Kind::Constant, 1.0), 0.1}};
  SimState st;
  st.T.resize(8);
  st.Tr.resize(8);
  st.rho.assign(8, 0.0);
  for (int i = 0; i < 8; ++i) {
    st.T[i] = 0.1 * (i + 1);
    st.Tr[i] = 0.01 * (i + 1);
  }
  const std::string path = "snap_test_2d.csv";
  write_snapshot(path, pb, st, false, {0.4, 0.1});
  const auto rows = read_csv(path);
  REQUIRE(rows.size() == 8);
  CHECK(rows[5][0] == pb.mesh.cx(5));
  CHECK(rows[5][1] == pb.mesh.cy(5));
  CHECK(rows[5][2] == st.T[5]);

  const auto top = read_csv("snap_test_2d_y0.4.csv");  // second row of cells
  REQUIRE(top.size() == 4);
  for (int ix = 0; ix < 4; ++ix) CHECK(top[ix][1] == st.T[4 + ix]);
  const auto bot = read_csv("snap_test_2d_y0.1.csv");
  REQUIRE(bot.size() == 4);
  for (int ix = 0; ix < 4; ++ix) CHECK(bot[ix][1] == st.T[ix]);
  std::remove(path.c_str());
  std::remove("snap_test_2d_y0.4.csv");
  std::remove("snap_test_2d_y0.1.csv");
}

TEST_CASE("replica statistics and figure of merit") {
  RunConfig rc = preset("infinite-medium", true);
  rc.budget = 400;
  rc.t_end = 0.01;
  const ReplicaStats rs = figure_of_merit(rc, 3);
  REQUIRE(rs.mean_T.size() == 50);
  CHECK(rs.replicas == 3);
  CHECK(rs.wall_seconds > 0.0);
  for (double m : rs.mean_T) CHECK(m == doctest::Approx(1.0).epsilon(0.2));
  for (double v : rs.var_T) CHECK(v >= 0.0);
  CHECK(rs.fom_T > 0.0);

  const Problem pb = build_problem(rc);
  write_fom_csv("fom_test.csv", pb, rs);
  const auto rows = read_csv("fom_test.csv");
  REQUIRE(rows.size() == 50);
  CHECK(rows[7][1] == rs.mean_T[7]);
  CHECK(rows[7][2] == rs.var_T[7]);
  std::remove("fom_test.csv");

  // a deterministic solver has zero replica variance: infinite figure of merit
  RunConfig rd = rc;
  rd.solver = "diffusion";
  rd.budget = 0;
  const ReplicaStats ds = figure_of_merit(rd, 2);
  CHECK(std::isinf(ds.fom_T));
  CHECK_THROWS_AS((void)figure_of_merit(rc, 1), std::invalid_argument);
}
