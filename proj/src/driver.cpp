#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "rt/planck.hpp"
#include "rt/problem.hpp"
#include "rt/rng.hpp"
#include "rt/sources.hpp"
#include "rt/transport.hpp"

namespace rt {

namespace {

constexpr double kTfloor = 1e-6;

struct BFaceSrc {
  int face = -1, ic = -1;
  bool planck = false;
  double Tb = 0.0;
  double phi_half = 0.0;
  std::vector<double> b_half;  // per group at the face temperature
};

std::vector<BFaceSrc> boundary_face_sources(const Problem& pb, const std::vector<double>& rho_n) {
  const Mesh& m = pb.mesh;
  const int G = pb.grid.groups();
  const double ac = pb.pc.a * pb.pc.c;
  std::vector<BFaceSrc> out;
  for (int f = 0; f < m.nfaces(); ++f) {
    const Interface& fc = m.face(f);
    if (fc.lo >= 0 && fc.hi >= 0) continue;
    const BoundaryCond& bc = pb.bc[fc.bside];
    if (bc.kind == BoundaryKind::Reflective) continue;
    BFaceSrc bf;
    bf.face = f;
    bf.ic = (fc.hi >= 0) ? fc.hi : fc.lo;
    bf.planck = (bc.kind == BoundaryKind::Planck);
    bf.Tb = bf.planck ? bc.T : 0.0;
    double rho_tot = 0.0;
    for (int g = 0; g < G; ++g) rho_tot += rho_n[std::size_t(bf.ic) * G + g];
    bf.phi_half = 0.5 * (ac * bf.Tb * bf.Tb * bf.Tb * bf.Tb + rho_tot);
    const double Th = std::max(std::pow(std::max(bf.phi_half, 0.0) / ac, 0.25), kTfloor);
    bf.b_half.resize(G);
    for (int g = 0; g < G; ++g) bf.b_half[g] = group_fraction(pb.grid, g, Th, pb.pc);
    out.push_back(std::move(bf));
  }
  return out;
}

void roulette_census(const Problem& pb, SimState& st, std::uint64_t stepk) {
  if (!pb.census_roulette || pb.budget <= 0) return;
  if (static_cast<long long>(st.census.size()) <= 4 * pb.budget) return;
  double etot = 0.0;
  for (const Particle& p : st.census) etot += p.w;
  if (etot <= 0.0) {
    st.census.clear();
    return;
  }
  const double wt = etot / static_cast<double>(pb.budget);
  std::vector<Particle> kept;
  kept.reserve(pb.budget);
  for (std::size_t i = 0; i < st.census.size(); ++i) {
    Particle p = st.census[i];
    if (p.w >= wt) {
      kept.push_back(p);
      continue;
    }
    RngStream rng(pb.seed, stepk, 7, i);
    if (rng.u() < p.w / wt) {
      p.w = wt;
      p.w0 = std::max(p.w0, wt);
      kept.push_back(p);
    }
  }
  st.census = std::move(kept);
}

void finish_step(const Problem& pb, SimState& st, StepReport& rep,
                 std::vector<Particle>&& new_census, double dt) {
  const Mesh& m = pb.mesh;
  const int n = m.ncells(), G = pb.grid.groups();
  const TallySet& tal = rep.tallies;
  st.rho.assign(std::size_t(n) * G, 0.0);
  for (int i = 0; i < n; ++i) {
    double ei = 0.0, dE = 0.0;
    for (int g = 0; g < G; ++g) {
      const std::size_t k = tal.cg(i, g);
      st.rho[k] = pb.pc.c * tal.EI[k] / m.volume(i);
      ei += tal.EI[k];
      dE += tal.EA[k] - tal.ER[k];
    }
    st.Tr[i] = std::pow(std::max(ei, 0.0) / (pb.pc.a * m.volume(i)), 0.25);
    double Tn = st.T[i] + dE / (pb.materials[m.material(i)].Cv * m.volume(i));
    if (Tn < kTfloor) {
      Tn = kTfloor;
      ++st.floor_warnings;
    }
    st.T[i] = Tn;
  }
  st.census = std::move(new_census);
  ++st.step;
  st.t += dt;

  double worst = 0.0;
  for (int g = 0; g < G; ++g) {
    const double sampled = tal.sampled[0 * G + g] + tal.sampled[1 * G + g] +
                           tal.sampled[4 * G + g] + tal.scat_in[g] - tal.scat_out[g];
    double sunk = 0.0;
    for (int i = 0; i < n; ++i) sunk += tal.EA[tal.cg(i, g)] + tal.EI[tal.cg(i, g)];
    for (int s = 0; s < 4; ++s) sunk += tal.leak[std::size_t(s) * G + g];
    const double scale = std::max(sampled, 1e-300);
    worst = std::max(worst, std::abs(sampled - sunk) / scale);
    st.injected += tal.sampled[1 * G + g];
  }
  for (std::size_t k = 0; k < tal.leak.size(); ++k) st.leaked += tal.leak[k];
  rep.conservation_error = worst;
}

}  // namespace

SimState init_state(const Problem& pb) {
  const Mesh& m = pb.mesh;
  const int n = m.ncells(), G = pb.grid.groups();
  const double ac = pb.pc.a * pb.pc.c;
  SimState st;
  st.T.assign(n, std::max(pb.T0, kTfloor));
  st.Tr = st.T;
  st.rho.assign(std::size_t(n) * G, 0.0);
  const std::vector<double> b0 = planck_fraction_field(pb.grid, st.T, pb.pc);
  for (int i = 0; i < n; ++i) {
    const double T = st.T[i];
    for (int g = 0; g < G; ++g)
      st.rho[std::size_t(i) * G + g] = ac * T * T * T * T * b0[std::size_t(i) * G + g];
  }
  if (pb.budget > 0) {
    std::vector<Bucket> buckets;
    for (int i = 0; i < n; ++i)
      for (int g = 0; g < G; ++g) {
        const double E = st.rho[std::size_t(i) * G + g] * m.volume(i) / pb.pc.c;
        if (E > 0.0) buckets.push_back({SourceClass::Census, i, -1, g, E});
      }
    const auto counts = allocate_counts(buckets, pb.budget);
    SampleContext sc{&m, pb.seed, 0, 0.0, 0.0};
    std::uint64_t idx = 0;
    for (std::size_t k = 0; k < buckets.size(); ++k) {
      if (counts[k] <= 0) continue;
      sample_cell_uniform(sc, SourceClass::Census, buckets[k].cell, buckets[k].group,
                          buckets[k].energy, counts[k], idx, st.census);
      idx += counts[k];
    }
  }
  return st;
}

StepReport emc_step(const Problem& pb, SimState& st, double dt) {
  const std::uint64_t stepk = st.step + 1;
  try {
    const Mesh& m = pb.mesh;
    const int n = m.ncells(), G = pb.grid.groups(), nf = m.nfaces();
    const double a = pb.pc.a, c = pb.pc.c;
    StepReport rep;
    rep.dt = dt;
    rep.tallies = TallySet(n, G, nf);
    TallySet& tal = rep.tallies;

    roulette_census(pb, st, stepk);

    const std::vector<double> sig_n = opacity_field(m, pb.materials, pb.grid, st.T);
    const std::vector<double> b_n = planck_fraction_field(pb.grid, st.T, pb.pc);
    const std::vector<BFaceSrc> bsrc = boundary_face_sources(pb, st.rho);

    std::vector<Bucket> buckets;
    for (const BFaceSrc& bf : bsrc) {
      const double area = m.face(bf.face).area;
      for (int g = 0; g < G; ++g) {
        if (bf.planck) {
          const double E = pi * dt * group_planck(pb.grid, g, bf.Tb, pb.pc) * area;
          if (E > 0.0) buckets.push_back({SourceClass::Boundary, -1, bf.face, g, E});
        }
        const double Eg = 0.25 * dt * area * bf.b_half[g] * bf.phi_half;
        if (Eg > 0.0) buckets.push_back({SourceClass::GhostBoundary, -1, bf.face, g, Eg});
      }
    }
    for (int i = 0; i < n; ++i) {
      const double T = st.T[i], T4 = T * T * T * T;
      for (int g = 0; g < G; ++g) {
        const std::size_t k = std::size_t(i) * G + g;
        const double Eg = a * T4 * b_n[k] * m.volume(i);
        if (Eg > 0.0) buckets.push_back({SourceClass::GhostCensus, i, -1, g, Eg});
        const double Ee = c * a * T4 * sig_n[k] * b_n[k] * m.volume(i) * dt;  // estimate
        if (Ee > 0.0) buckets.push_back({SourceClass::Emission, i, -1, g, Ee});
      }
    }
    const auto counts = allocate_counts(buckets, pb.budget);

    SampleContext sc{&m, pb.seed, stepk, st.t, dt};
    std::vector<Particle> flight;
    for (const Particle& p : st.census) {
      tal.sampled[0 * G + p.group] += p.w;
      flight.push_back(p);
    }
    std::uint64_t idx[5] = {0, 0, 0, 0, 0};
    long long n_em = 0;
    for (std::size_t k = 0; k < buckets.size(); ++k) {
      const Bucket& b = buckets[k];
      if (b.cls == SourceClass::Emission) {
        n_em += counts[k];
        continue;
      }
      if (counts[k] <= 0) continue;
      const int ci = int(b.cls);
      if (b.face >= 0)
        sample_boundary_face(sc, b.cls, b.face, b.group, b.energy, counts[k], idx[ci], flight);
      else
        sample_cell_uniform(sc, b.cls, b.cell, b.group, b.energy, counts[k], idx[ci], flight);
      tal.sampled[std::size_t(ci) * G + b.group] += b.energy;
      idx[ci] += counts[k];
    }

    std::vector<Particle> new_census;
    TrackContext ctx;
    ctx.mesh = &m;
    ctx.sigma = &sig_n;
    ctx.bc = pb.bc;
    ctx.c = c;
    ctx.t_end = st.t + dt;
    ctx.weight_cutoff = pb.weight_cutoff;
    ctx.seed = pb.seed;
    ctx.step = stepk;
    track_all(flight, ctx, tal, &new_census, pb.threads);

    MacroConfig mcfg;
    mcfg.pc = pb.pc;
    mcfg.theta_form = pb.theta_form;
    mcfg.picard_tol = pb.picard_tol;
    mcfg.picard_max = pb.picard_max;
    mcfg.newton_tol = pb.newton_tol;
    mcfg.newton_max = pb.newton_max;
    MacroInput min;
    min.mesh = &m;
    min.grid = &pb.grid;
    min.materials = &pb.materials;
    min.bc = pb.bc;
    min.dt = dt;
    min.rho_n = &st.rho;
    min.T_n = &st.T;
    min.tallies = &tal;
    MacroResult mres = picard_solve(min, mcfg);
    rep.picard_iters = mres.picard_iters;

    // emission phase at the macro temperature
    std::vector<Bucket> em;
    double er_tot = 0.0;
    for (int i = 0; i < n; ++i) {
      const double T = mres.T[i], T4 = T * T * T * T;
      for (int g = 0; g < G; ++g) {
        const std::size_t k = std::size_t(i) * G + g;
        const double E = c * a * T4 * mres.sigma[k] * mres.b[k] * m.volume(i) * dt;
        tal.ER[k] = E;
        er_tot += E;
        if (E > 0.0) em.push_back({SourceClass::Emission, i, -1, g, E});
      }
    }
    if (n_em == 0 && er_tot > 0.0) n_em = std::max<long long>(1, pb.budget / 100);
    const auto ecnt = allocate_counts(em, n_em);

    std::vector<double> B;
    if (pb.tilt) {
      B.resize(std::size_t(n) * G);
      for (int i = 0; i < n; ++i)
        for (int g = 0; g < G; ++g)
          B[std::size_t(i) * G + g] = group_planck(pb.grid, g, mres.T[i], pb.pc);
    }
    std::vector<Particle> emp;
    std::uint64_t eidx = 0;
    for (std::size_t k = 0; k < em.size(); ++k) {
      if (ecnt[k] <= 0) continue;
      const TiltCoeffs tc =
          pb.tilt ? tilt_coeffs(m, B, em[k].cell, em[k].group, G) : TiltCoeffs{};
      sample_emission(sc, em[k].cell, em[k].group, em[k].energy, ecnt[k], eidx, tc, emp);
      tal.sampled[4 * G + em[k].group] += em[k].energy;
      eidx += ecnt[k];
    }
    ctx.sigma = &mres.sigma;
    track_all(emp, ctx, tal, &new_census, pb.threads);

    finish_step(pb, st, rep, std::move(new_census), dt);
    return rep;
  } catch (const std::exception& e) {
    throw std::runtime_error("step " + std::to_string(stepk) + ": " + e.what());
  }
}

StepReport imc_step(const Problem& pb, SimState& st, double dt) {
  const std::uint64_t stepk = st.step + 1;
  try {
    const Mesh& m = pb.mesh;
    const int n = m.ncells(), G = pb.grid.groups(), nf = m.nfaces();
    const double a = pb.pc.a, c = pb.pc.c;
    StepReport rep;
    rep.dt = dt;
    rep.tallies = TallySet(n, G, nf);
    TallySet& tal = rep.tallies;

    roulette_census(pb, st, stepk);

    const std::vector<double> sig_n = opacity_field(m, pb.materials, pb.grid, st.T);
    const std::vector<double> b_n = planck_fraction_field(pb.grid, st.T, pb.pc);

    // Fleck factor and effective opacities
    std::vector<double> fleck(n), eff_abs(std::size_t(n) * G), eff_scat(std::size_t(n) * G);
    std::vector<double> cdf(std::size_t(n) * G);
    for (int i = 0; i < n; ++i) {
      double sigP = 0.0;
      for (int g = 0; g < G; ++g)
        sigP += sig_n[std::size_t(i) * G + g] * b_n[std::size_t(i) * G + g];
      const double Cv = pb.materials[m.material(i)].Cv;
      const double beta = 4.0 * a * st.T[i] * st.T[i] * st.T[i] / Cv;
      fleck[i] = 1.0 / (1.0 + beta * c * sigP * dt);
      double acc = 0.0;
      for (int g = 0; g < G; ++g) {
        const std::size_t k = std::size_t(i) * G + g;
        eff_abs[k] = fleck[i] * sig_n[k];
        eff_scat[k] = (1.0 - fleck[i]) * sig_n[k];
        acc += sig_n[k] * b_n[k];
        cdf[k] = acc;
      }
      for (int g = 0; g < G; ++g) {
        const std::size_t k = std::size_t(i) * G + g;
        cdf[k] = (acc > 0.0) ? cdf[k] / acc : double(g + 1) / G;
      }
    }

    std::vector<Bucket> buckets;
    for (int f = 0; f < nf; ++f) {
      const Interface& fc = m.face(f);
      if (fc.lo >= 0 && fc.hi >= 0) continue;
      const BoundaryCond& bc = pb.bc[fc.bside];
      if (bc.kind != BoundaryKind::Planck) continue;
      for (int g = 0; g < G; ++g) {
        const double E = pi * dt * group_planck(pb.grid, g, bc.T, pb.pc) * fc.area;
        if (E > 0.0) buckets.push_back({SourceClass::Boundary, -1, f, g, E});
      }
    }
    for (int i = 0; i < n; ++i) {
      const double T = st.T[i], T4 = T * T * T * T;
      for (int g = 0; g < G; ++g) {
        const std::size_t k = std::size_t(i) * G + g;
        const double E = fleck[i] * c * a * T4 * sig_n[k] * b_n[k] * m.volume(i) * dt;
        tal.ER[k] = E;
        if (E > 0.0) buckets.push_back({SourceClass::Emission, i, -1, g, E});
      }
    }
    const auto counts = allocate_counts(buckets, pb.budget);

    SampleContext sc{&m, pb.seed, stepk, st.t, dt};
    std::vector<Particle> flight;
    for (const Particle& p : st.census) {
      tal.sampled[0 * G + p.group] += p.w;
      flight.push_back(p);
    }
    std::vector<double> B;
    if (pb.imc_tilt) {
      B.resize(std::size_t(n) * G);
      for (int i = 0; i < n; ++i)
        for (int g = 0; g < G; ++g)
          B[std::size_t(i) * G + g] = group_planck(pb.grid, g, st.T[i], pb.pc);
    }
    std::uint64_t idx[5] = {0, 0, 0, 0, 0};
    for (std::size_t k = 0; k < buckets.size(); ++k) {
      if (counts[k] <= 0) continue;
      const Bucket& b = buckets[k];
      const int ci = int(b.cls);
      if (b.cls == SourceClass::Boundary)
        sample_boundary_face(sc, b.cls, b.face, b.group, b.energy, counts[k], idx[ci], flight);
      else {
        const TiltCoeffs tc =
            pb.imc_tilt ? tilt_coeffs(m, B, b.cell, b.group, G) : TiltCoeffs{};
        sample_emission(sc, b.cell, b.group, b.energy, counts[k], idx[ci], tc, flight);
      }
      tal.sampled[std::size_t(ci) * G + b.group] += b.energy;
      idx[ci] += counts[k];
    }

    ScatterModel sm;
    sm.scat_sigma = &eff_scat;
    sm.group_cdf = &cdf;
    TrackContext ctx;
    ctx.mesh = &m;
    ctx.sigma = &eff_abs;
    ctx.bc = pb.bc;
    ctx.c = c;
    ctx.t_end = st.t + dt;
    ctx.weight_cutoff = pb.weight_cutoff;
    ctx.scatter = &sm;
    ctx.seed = pb.seed;
    ctx.step = stepk;
    std::vector<Particle> new_census;
    track_all(flight, ctx, tal, &new_census, pb.threads);

    finish_step(pb, st, rep, std::move(new_census), dt);
    return rep;
  } catch (const std::exception& e) {
    throw std::runtime_error("step " + std::to_string(stepk) + ": " + e.what());
  }
}

void run_simulation(const Problem& pb, SimState& st,
                    const std::function<void(const SimState&, const StepReport&)>& on_step) {
  const Mesh& m = pb.mesh;
  const int n = m.ncells(), G = pb.grid.groups();
  const double tiny = 1e-12 * std::max(1.0, pb.t_end);
  while (st.t < pb.t_end - tiny) {
    const double dt = std::min(pb.dt, pb.t_end - st.t);
    StepReport rep;
    if (pb.solver == SolverKind::Diffusion) {
      rep.dt = dt;
      rep.tallies = TallySet(n, G, m.nfaces());
      st.T = diffusion_step(pb, st.T, dt, &rep.picard_iters);
      st.Tr = st.T;
      const std::vector<double> b = planck_fraction_field(pb.grid, st.T, pb.pc);
      const double ac = pb.pc.a * pb.pc.c;
      for (int i = 0; i < n; ++i) {
        const double T4 = st.T[i] * st.T[i] * st.T[i] * st.T[i];
        for (int g = 0; g < G; ++g)
          st.rho[std::size_t(i) * G + g] = ac * T4 * b[std::size_t(i) * G + g];
      }
      ++st.step;
      st.t += dt;
    } else if (pb.solver == SolverKind::Imc) {
      rep = imc_step(pb, st, dt);
    } else {
      rep = emc_step(pb, st, dt);
    }
    // keep snapshot clocks exact multiples of dt
    st.t = std::min(pb.t_end, static_cast<double>(st.step) * pb.dt);
    if (on_step) on_step(st, rep);
  }
}

}  // namespace rt
