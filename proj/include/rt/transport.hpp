#pragma once

#include <cstdint>
#include <vector>

#include "rt/constants.hpp"
#include "rt/mesh.hpp"
#include "rt/tally.hpp"

namespace rt {

// Fixed particle-block size used for deterministic parallel reduction: tallies
// are folded in block-index order, so results are bit-identical for any thread
// count.
inline constexpr int kTrackBlock = 4096;

// Effective scattering (Fleck-style); absent for the purely absorbing solver.
struct ScatterModel {
  // per (cell, group): scattering rate (1-f) sigma_g [1/cm]
  const std::vector<double>* scat_sigma = nullptr;
  // per cell: cumulative distribution over groups of sigma_g B_g, length ncells*G
  const std::vector<double>* group_cdf = nullptr;
};

struct TrackContext {
  const Mesh* mesh = nullptr;
  // per (cell, group) absorption opacity used for weight decay [1/cm]
  const std::vector<double>* sigma = nullptr;
  const BoundaryCond* bc = nullptr;  // indexed by side
  double c = 29.98;
  double t_end = 0.0;               // census time t^{n+1}
  double weight_cutoff = 1e-4;      // fraction of birth weight
  const ScatterModel* scatter = nullptr;
  std::uint64_t seed = 0;           // for in-flight sampling (scattering only)
  std::uint64_t step = 0;
};

// Track a single particle to termination, accumulating tallies; survivors are
// appended to `census_out` (real particles only). `pidx` keys the in-flight
// RNG substream.
void track(Particle p, const TrackContext& ctx, TallySet& tal,
           std::vector<Particle>* census_out, std::uint64_t pidx);

// Track a particle array with `nthreads` workers; tallies and census output are
// reduced in fixed block order (bit-identical for any thread count).
void track_all(const std::vector<Particle>& particles, const TrackContext& ctx,
               TallySet& tal, std::vector<Particle>* census_out, int nthreads);

}  // namespace rt
