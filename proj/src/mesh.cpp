#include "rt/mesh.hpp"

#include <cmath>
#include <stdexcept>

namespace rt {

Mesh Mesh::build_1d(const std::vector<Region1D>& regions) {
  if (regions.empty()) throw std::invalid_argument("mesh: no regions");
  Mesh m;
  m.dim_ = 1;
  double cursor = regions.front().x0;
  m.xedges_.push_back(cursor);
  for (const auto& r : regions) {
    if (std::abs(r.x0 - cursor) > 1e-12)
      throw std::invalid_argument("mesh: regions must tile the domain without gaps");
    if (r.ncells < 1 || r.x1 <= r.x0) throw std::invalid_argument("mesh: bad region");
    const double h = (r.x1 - r.x0) / r.ncells;
    for (int k = 0; k < r.ncells; ++k) {
      const double a = r.x0 + k * h, b = (k + 1 == r.ncells) ? r.x1 : r.x0 + (k + 1) * h;
      m.xedges_.push_back(b);
      m.volume_.push_back(b - a);
      m.cx_.push_back(0.5 * (a + b));
      m.cy_.push_back(0.0);
      m.dx_.push_back(b - a);
      m.dy_.push_back(1.0);
      m.material_.push_back(r.material);
    }
    cursor = r.x1;
  }
  m.nx_ = m.ncells();
  const int n = m.ncells();
  m.cell_faces_.resize(n);
  for (int f = 0; f <= n; ++f) {
    Interface fc;
    fc.axis = 0;
    fc.area = 1.0;
    fc.lo = f - 1;
    fc.hi = (f < n) ? f : -1;
    if (fc.lo < 0) fc.bside = kLeft;
    if (fc.hi < 0) fc.bside = kRight;
    if (fc.lo >= 0 && fc.hi >= 0)
      fc.dist = m.cx_[fc.hi] - m.cx_[fc.lo];
    else
      fc.dist = 0.5 * m.dx_[fc.lo >= 0 ? fc.lo : fc.hi];
    m.faces_.push_back(fc);
  }
  for (int i = 0; i < n; ++i) m.cell_faces_[i] = {i, i + 1};
  return m;
}

Mesh Mesh::build_2d(double x1, double y1, int nx, int ny, int default_material,
                    const std::vector<Box2D>& boxes) {
  if (nx < 1 || ny < 1 || x1 <= 0.0 || y1 <= 0.0) throw std::invalid_argument("mesh: bad 2d extents");
  Mesh m;
  m.dim_ = 2;
  m.nx_ = nx;
  m.ny_ = ny;
  m.hx_ = x1 / nx;
  m.hy_ = y1 / ny;
  const int n = nx * ny;
  m.volume_.resize(n);
  m.cx_.resize(n);
  m.cy_.resize(n);
  m.dx_.resize(n);
  m.dy_.resize(n);
  m.material_.resize(n);
  for (int iy = 0; iy < ny; ++iy)
    for (int ix = 0; ix < nx; ++ix) {
      const int i = m.cell_index_2d(ix, iy);
      m.volume_[i] = m.hx_ * m.hy_;  // x 1 cm unit depth
      m.cx_[i] = (ix + 0.5) * m.hx_;
      m.cy_[i] = (iy + 0.5) * m.hy_;
      m.dx_[i] = m.hx_;
      m.dy_[i] = m.hy_;
      int mat = default_material;
      for (const auto& b : boxes)
        if (m.cx_[i] > b.x0 && m.cx_[i] < b.x1 && m.cy_[i] > b.y0 && m.cy_[i] < b.y1)
          mat = b.material;
      m.material_[i] = mat;
    }
  m.faces_.resize((nx + 1) * ny + nx * (ny + 1));
  for (int ix = 0; ix <= nx; ++ix)
    for (int iy = 0; iy < ny; ++iy) {
      Interface fc;
      fc.axis = 0;
      fc.area = m.hy_;
      fc.lo = (ix > 0) ? m.cell_index_2d(ix - 1, iy) : -1;
      fc.hi = (ix < nx) ? m.cell_index_2d(ix, iy) : -1;
      if (fc.lo < 0) fc.bside = kLeft;
      if (fc.hi < 0) fc.bside = kRight;
      fc.dist = (fc.lo >= 0 && fc.hi >= 0) ? m.hx_ : 0.5 * m.hx_;
      m.faces_[m.vface(ix, iy)] = fc;
    }
  for (int iy = 0; iy <= ny; ++iy)
    for (int ix = 0; ix < nx; ++ix) {
      Interface fc;
      fc.axis = 1;
      fc.area = m.hx_;
      fc.lo = (iy > 0) ? m.cell_index_2d(ix, iy - 1) : -1;
      fc.hi = (iy < ny) ? m.cell_index_2d(ix, iy) : -1;
      if (fc.lo < 0) fc.bside = kBottom;
      if (fc.hi < 0) fc.bside = kTop;
      fc.dist = (fc.lo >= 0 && fc.hi >= 0) ? m.hy_ : 0.5 * m.hy_;
      m.faces_[m.hface(ix, iy)] = fc;
    }
  m.cell_faces_.resize(n);
  for (int iy = 0; iy < ny; ++iy)
    for (int ix = 0; ix < nx; ++ix) {
      const int i = m.cell_index_2d(ix, iy);
      m.cell_faces_[i] = {m.vface(ix, iy), m.vface(ix + 1, iy), m.hface(ix, iy),
                          m.hface(ix, iy + 1)};
    }
  return m;
}

double harmonic_interface_opacity(double si, double sj, double di, double dj) {
  if (si <= 0.0 || sj <= 0.0) throw std::domain_error("interface opacity: need sigma > 0");
  return (di + dj) / (di / si + dj / sj);
}

double interface_temperature(double Ti, double Tj, double di, double dj) {
  const double ti4 = Ti * Ti * Ti * Ti, tj4 = Tj * Tj * Tj * Tj;
  return std::pow((di * ti4 + dj * tj4) / (di + dj), 0.25);
}

}  // namespace rt
