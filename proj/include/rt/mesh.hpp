#pragma once

#include <vector>

#include "rt/opacity.hpp"

namespace rt {

enum class BoundaryKind { Reflective, Vacuum, Planck };

struct BoundaryCond {
  BoundaryKind kind = BoundaryKind::Reflective;
  double T = 0.0;  // keV, Planck sources only
};

struct Material {
  OpacityModel opacity;
  double Cv;  // GJ/keV/cm^3
};

struct Region1D {
  double x0, x1;
  int ncells;
  int material;
};

struct Box2D {
  double x0, x1, y0, y1;
  int material;
};

// Sides: 0 = left (-x), 1 = right (+x), 2 = bottom (-y), 3 = top (+y).
inline constexpr int kLeft = 0, kRight = 1, kBottom = 2, kTop = 3;

struct Interface {
  int lo = -1, hi = -1;  // cells on the -/+ side along the face normal; -1 = domain boundary
  int axis = 0;          // unit normal points along +x (0) or +y (1)
  double area = 0.0;     // |S| (1D: 1 cm^2; 2D: edge length x 1 cm depth)
  double dist = 0.0;     // center-to-center distance (interior faces)
  int bside = -1;        // boundary side id when lo or hi is -1
};

class Mesh {
 public:
  static Mesh build_1d(const std::vector<Region1D>& regions);
  static Mesh build_2d(double x1, double y1, int nx, int ny, int default_material,
                       const std::vector<Box2D>& boxes);

  int dim() const { return dim_; }
  int ncells() const { return static_cast<int>(volume_.size()); }
  int nfaces() const { return static_cast<int>(faces_.size()); }
  int nx() const { return nx_; }
  int ny() const { return ny_; }

  double volume(int i) const { return volume_[i]; }
  double cx(int i) const { return cx_[i]; }
  double cy(int i) const { return cy_[i]; }
  double dx(int i) const { return dx_[i]; }
  double dy(int i) const { return dy_[i]; }
  int material(int i) const { return material_[i]; }

  const Interface& face(int f) const { return faces_[f]; }
  const std::vector<Interface>& faces() const { return faces_; }
  // Face ids surrounding a cell, in a fixed order (1D: left, right; 2D: -x, +x, -y, +y).
  const std::vector<int>& cell_faces(int i) const { return cell_faces_[i]; }

  // 1D edge coordinates (size ncells+1); valid only for dim() == 1.
  const std::vector<double>& edges_1d() const { return xedges_; }

  int cell_index_2d(int ix, int iy) const { return iy * nx_ + ix; }
  // 2D face ids: vertical face between columns ix-1,ix at row iy; horizontal analogue.
  int vface(int ix_edge, int iy) const { return ix_edge * ny_ + iy; }
  int hface(int ix, int iy_edge) const { return (nx_ + 1) * ny_ + iy_edge * nx_ + ix; }
  double x0_2d() const { return 0.0; }
  double hx() const { return hx_; }
  double hy() const { return hy_; }

 private:
  int dim_ = 1;
  int nx_ = 0, ny_ = 1;
  double hx_ = 0.0, hy_ = 0.0;  // uniform spacings (2D)
  std::vector<double> volume_, cx_, cy_, dx_, dy_;
  std::vector<int> material_;
  std::vector<Interface> faces_;
  std::vector<std::vector<int>> cell_faces_;
  std::vector<double> xedges_;
};

// Size-weighted harmonic mean for interface opacities; d_i, d_j are
// center-to-interface distances.
double harmonic_interface_opacity(double si, double sj, double di, double dj);

// Size-weighted fourth-power mean for interface temperatures.
double interface_temperature(double Ti, double Tj, double di, double dj);

}  // namespace rt
