#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rt/mesh.hpp"

using namespace rt;

TEST_CASE("1d multi-region mesh") {
  Mesh m = Mesh::build_1d({{0.0, 2.0, 4, 0}, {2.0, 3.0, 2, 1}});
  CHECK(m.dim() == 1);
  CHECK(m.ncells() == 6);
  CHECK(m.nfaces() == 7);
  CHECK(m.dx(0) == doctest::Approx(0.5));
  CHECK(m.dx(5) == doctest::Approx(0.5));
  CHECK(m.cx(0) == doctest::Approx(0.25));
  CHECK(m.cx(4) == doctest::Approx(2.25));
  CHECK(m.material(3) == 0);
  CHECK(m.material(4) == 1);
  CHECK(m.volume(2) == doctest::Approx(0.5));
  CHECK(m.edges_1d().front() == 0.0);
  CHECK(m.edges_1d().back() == doctest::Approx(3.0));

  const Interface& left = m.face(0);
  CHECK(left.lo == -1);
  CHECK(left.hi == 0);
  CHECK(left.bside == kLeft);
  CHECK(left.dist == doctest::Approx(0.25));
  const Interface& right = m.face(6);
  CHECK(right.hi == -1);
  CHECK(right.bside == kRight);
  const Interface& mid = m.face(4);
  CHECK(mid.lo == 3);
  CHECK(mid.hi == 4);
  CHECK(mid.dist == doctest::Approx(0.5));
  CHECK(mid.area == 1.0);
  CHECK(m.cell_faces(3)[0] == 3);
  CHECK(m.cell_faces(3)[1] == 4);
}

TEST_CASE("1d rejects gaps and bad regions") {
  CHECK_THROWS(Mesh::build_1d({{0.0, 1.0, 2, 0}, {1.5, 2.0, 2, 0}}));
  CHECK_THROWS(Mesh::build_1d({{0.0, 0.0, 2, 0}}));
  CHECK_THROWS(Mesh::build_1d({}));
}

TEST_CASE("2d mesh with material boxes") {
  Mesh m = Mesh::build_2d(2.0, 1.0, 4, 2, 0, {{1.0, 2.0, 0.0, 0.5, 1}});
  CHECK(m.dim() == 2);
  CHECK(m.ncells() == 8);
  CHECK(m.nfaces() == (4 + 1) * 2 + 4 * (2 + 1));
  CHECK(m.hx() == doctest::Approx(0.5));
  CHECK(m.hy() == doctest::Approx(0.5));
  CHECK(m.volume(0) == doctest::Approx(0.25));
  // box covers columns 2,3 of the bottom row
  CHECK(m.material(m.cell_index_2d(0, 0)) == 0);
  CHECK(m.material(m.cell_index_2d(2, 0)) == 1);
  CHECK(m.material(m.cell_index_2d(3, 0)) == 1);
  CHECK(m.material(m.cell_index_2d(3, 1)) == 0);

  // vertical face between columns 1 and 2 on row 0
  const Interface& vf = m.face(m.vface(2, 0));
  CHECK(vf.axis == 0);
  CHECK(vf.lo == m.cell_index_2d(1, 0));
  CHECK(vf.hi == m.cell_index_2d(2, 0));
  CHECK(vf.area == doctest::Approx(0.5));
  CHECK(vf.dist == doctest::Approx(0.5));
  // domain boundary faces
  CHECK(m.face(m.vface(0, 1)).bside == kLeft);
  CHECK(m.face(m.vface(4, 1)).bside == kRight);
  CHECK(m.face(m.hface(1, 0)).bside == kBottom);
  CHECK(m.face(m.hface(1, 2)).bside == kTop);
  const Interface& hf = m.face(m.hface(3, 1));
  CHECK(hf.axis == 1);
  CHECK(hf.lo == m.cell_index_2d(3, 0));
  CHECK(hf.hi == m.cell_index_2d(3, 1));

  const auto& cf = m.cell_faces(m.cell_index_2d(1, 1));
  CHECK(cf.size() == 4);
  CHECK(cf[0] == m.vface(1, 1));
  CHECK(cf[1] == m.vface(2, 1));
  CHECK(cf[2] == m.hface(1, 1));
  CHECK(cf[3] == m.hface(1, 2));
}

TEST_CASE("interface averages") {
  CHECK(harmonic_interface_opacity(5.0, 5.0, 0.1, 0.3) == doctest::Approx(5.0));
  const double si = 2.0, sj = 10.0, di = 0.5, dj = 0.25;
  CHECK(harmonic_interface_opacity(si, sj, di, dj) ==
        doctest::Approx((di + dj) / (di / si + dj / sj)).epsilon(1e-14));
  CHECK_THROWS(harmonic_interface_opacity(0.0, 1.0, 0.5, 0.5));

  CHECK(interface_temperature(1.0, 1.0, 0.2, 0.7) == doctest::Approx(1.0));
  const double Ti = 0.5, Tj = 2.0;
  const double t4 = (di * std::pow(Ti, 4) + dj * std::pow(Tj, 4)) / (di + dj);
  CHECK(interface_temperature(Ti, Tj, di, dj) ==
        doctest::Approx(std::pow(t4, 0.25)).epsilon(1e-14));
}
