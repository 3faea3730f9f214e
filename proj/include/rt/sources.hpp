#pragma once

#include <cstdint>
#include <vector>

#include "rt/mesh.hpp"
#include "rt/tally.hpp"

namespace rt {

// One sampling bucket: a (source class, location, group) slot holding the total
// energy to emit from it this step.
struct Bucket {
  SourceClass cls = SourceClass::Census;
  int cell = -1;   // emitting cell (volume sources)
  int face = -1;   // boundary face (surface sources)
  int group = 0;
  double energy = 0.0;  // GJ
};

// Largest-remainder split of `total` particles across bucket energies.
// Postprocessing guarantees no energy is silently dropped: every class holding
// positive energy receives at least one particle, and the energy of any bucket
// left with zero count is merged into the largest same-class bucket of the same
// group (fallback: same class, any group) — `buckets` energies are adjusted in
// place accordingly.
std::vector<long long> allocate_counts(std::vector<Bucket>& buckets, long long total);

struct SampleContext {
  const Mesh* mesh = nullptr;
  std::uint64_t seed = 0;
  std::uint64_t step = 0;
  double t_begin = 0.0;  // t^n
  double dt = 0.0;
};

// Per-axis tilting coefficients m = s·Δx/(2·B̄), clamped to [-1, 1]; the sign of
// the flight direction along each axis selects the one-sided slope.
struct TiltCoeffs {
  double mx_neg = 0.0, mx_pos = 0.0;
  double my_neg = 0.0, my_pos = 0.0;
};

// Single-axis tilt coefficient m = slope * d_here / (2 * Bbar) for the slope
// (B_here - B_nbr) / mean cell width, clamped to [-1, 1] so the tilted density
// 1 + m (2y - 1) stays nonnegative on the unit cell.
double tilt_m(double B_here, double B_nbr, double d_here, double d_nbr, double Bbar);

// One-sided slope coefficients for cell i from the per-(cell, group) emission
// field B; the minus slope serves particles flying toward -axis, the plus
// slope particles flying toward +axis.
TiltCoeffs tilt_coeffs(const Mesh& m, const std::vector<double>& B, int i, int g, int G);

// Volume source with uniform positions and isotropic directions, born at t^n
// (census and ghost-census classes).
void sample_cell_uniform(const SampleContext& sc, SourceClass cls, int cell, int group,
                         double energy, long long count, std::uint64_t idx0,
                         std::vector<Particle>& out);

// Surface source on a boundary face: positions uniform on the face, inward
// cosine-weighted directions, birth times uniform in [t^n, t^{n+1}].
void sample_boundary_face(const SampleContext& sc, SourceClass cls, int face, int group,
                          double energy, long long count, std::uint64_t idx0,
                          std::vector<Particle>& out);

// Emission source with linearly tilted in-cell positions (per-axis product in
// 2D), isotropic directions, birth times uniform in the step.
void sample_emission(const SampleContext& sc, int cell, int group, double energy,
                     long long count, std::uint64_t idx0, const TiltCoeffs& tc,
                     std::vector<Particle>& out);

}  // namespace rt
