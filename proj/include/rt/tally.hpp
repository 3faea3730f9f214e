#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "rt/mesh.hpp"

namespace rt {

enum class SourceClass : std::uint8_t {
  Census = 0,
  Boundary = 1,
  GhostCensus = 2,
  GhostBoundary = 3,
  Emission = 4,
};

inline bool is_ghost(SourceClass c) {
  return c == SourceClass::GhostCensus || c == SourceClass::GhostBoundary;
}

struct Particle {
  double x = 0.0, y = 0.0;
  double ox = 0.0, oy = 0.0, oz = 0.0;  // unit direction (1D transport uses ox = mu)
  double w = 0.0, w0 = 0.0;             // energy weight and birth weight [GJ]
  double t = 0.0;                       // clock [ns]
  int cell = 0;
  int group = 0;
  SourceClass tag = SourceClass::Census;
};

// Per-step tallies. Flux entries hold raw signed weight sums; divide by dt to
// get the time-averaged fluxes.
class TallySet {
 public:
  TallySet() = default;
  TallySet(int ncells, int ngroups, int nfaces)
      : ncells_(ncells),
        ngroups_(ngroups),
        EI(std::size_t(ncells) * ngroups, 0.0),
        EA(std::size_t(ncells) * ngroups, 0.0),
        ER(std::size_t(ncells) * ngroups, 0.0),
        FI(std::size_t(nfaces) * ngroups, 0.0),
        FBp(std::size_t(nfaces) * ngroups, 0.0),
        FBm(std::size_t(nfaces) * ngroups, 0.0),
        leak(std::size_t(4) * ngroups, 0.0),
        sampled(std::size_t(5) * ngroups, 0.0),
        scat_in(ngroups, 0.0),
        scat_out(ngroups, 0.0) {}

  int ncells() const { return ncells_; }
  int ngroups() const { return ngroups_; }

  std::size_t cg(int cell, int group) const { return std::size_t(cell) * ngroups_ + group; }
  std::size_t fg(int face, int group) const { return std::size_t(face) * ngroups_ + group; }

  void add(const TallySet& o) {
    auto acc = [](std::vector<double>& a, const std::vector<double>& b) {
      for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    };
    acc(EI, o.EI);
    acc(EA, o.EA);
    acc(ER, o.ER);
    acc(FI, o.FI);
    acc(FBp, o.FBp);
    acc(FBm, o.FBm);
    acc(leak, o.leak);
    acc(sampled, o.sampled);
    acc(scat_in, o.scat_in);
    acc(scat_out, o.scat_out);
  }

  void zero() {
    for (auto* v : {&EI, &EA, &ER, &FI, &FBp, &FBm, &leak, &sampled, &scat_in, &scat_out})
      std::fill(v->begin(), v->end(), 0.0);
  }

  std::vector<double> EI, EA, ER;      // per (cell, group) [GJ]
  std::vector<double> FI, FBp, FBm;    // per (face, group), signed weight sums [GJ]
  std::vector<double> leak;            // per (side, group) [GJ], real particles only
  std::vector<double> sampled;         // per (source class, group): energy given to particles
  std::vector<double> scat_in, scat_out;  // per group: weight moved by group resampling

 private:
  int ncells_ = 0, ngroups_ = 0;
};

}  // namespace rt
