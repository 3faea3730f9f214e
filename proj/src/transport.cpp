#include "rt/transport.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <condition_variable>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "rt/rng.hpp"

namespace rt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kDirEps = 1e-14;

enum class Event { Census, Cross, Scatter };

}  // namespace

void track(Particle p, const TrackContext& ctx, TallySet& tal,
           std::vector<Particle>* census_out, std::uint64_t pidx) {
  const Mesh& m = *ctx.mesh;
  const auto& sigma = *ctx.sigma;
  const int G = tal.ngroups();
  const bool real = !is_ghost(p.tag);
  const bool dim2 = m.dim() == 2;
  const int nx = m.nx();
  const double hx = dim2 ? m.hx() : 0.0, hy = dim2 ? m.hy() : 0.0;
  RngStream rng(ctx.seed, ctx.step, 100 + static_cast<std::uint64_t>(p.tag), pidx);

  int guard = 0;
  while (true) {
    if (++guard > 100000000) throw std::runtime_error("track: runaway particle");
    const double dT = ctx.c * (ctx.t_end - p.t);

    // distance to the next cell face along the flight direction
    double dB = kInf;
    int exit_face = -1, exit_axis = 0, sdir = 0, other = -1, bside = -1;
    if (!dim2) {
      const auto& e = m.edges_1d();
      if (p.ox > kDirEps) {
        dB = (e[p.cell + 1] - p.x) / p.ox;
        exit_face = p.cell + 1;
        sdir = 1;
      } else if (p.ox < -kDirEps) {
        dB = (e[p.cell] - p.x) / p.ox;
        exit_face = p.cell;
        sdir = -1;
      }
    } else {
      const int ix = p.cell % nx, iy = p.cell / nx;
      double dbx = kInf, dby = kInf;
      if (p.ox > kDirEps)
        dbx = ((ix + 1) * hx - p.x) / p.ox;
      else if (p.ox < -kDirEps)
        dbx = (ix * hx - p.x) / p.ox;
      if (p.oy > kDirEps)
        dby = ((iy + 1) * hy - p.y) / p.oy;
      else if (p.oy < -kDirEps)
        dby = (iy * hy - p.y) / p.oy;
      if (dbx <= dby) {
        dB = dbx;
        exit_axis = 0;
        sdir = (p.ox > 0.0) ? 1 : -1;
        exit_face = m.vface(ix + (sdir > 0 ? 1 : 0), iy);
      } else {
        dB = dby;
        exit_axis = 1;
        sdir = (p.oy > 0.0) ? 1 : -1;
        exit_face = m.hface(ix, iy + (sdir > 0 ? 1 : 0));
      }
    }
    if (dB < 0.0) dB = 0.0;
    if (exit_face >= 0) {
      const Interface& fc = m.face(exit_face);
      other = (sdir > 0) ? fc.hi : fc.lo;
      bside = fc.bside;
    }

    // optional effective-scattering distance
    double dS = kInf;
    if (ctx.scatter) {
      const double ss = (*ctx.scatter->scat_sigma)[std::size_t(p.cell) * G + p.group];
      if (ss > 0.0) dS = -std::log1p(-rng.u()) / ss;
    }

    Event ev = Event::Census;
    double d = dT;
    if (dB < d) {
      d = dB;
      ev = Event::Cross;
    }
    if (dS < d) {
      d = dS;
      ev = Event::Scatter;
    }

    // continuous energy deposition over the segment; the deposit is computed
    // as the exact weight difference so per-particle energy balances to the ulp
    const double sa = sigma[std::size_t(p.cell) * G + p.group];
    const double wn = p.w * std::exp(-sa * d);
    if (real) tal.EA[tal.cg(p.cell, p.group)] += p.w - wn;
    p.w = wn;
    p.x += p.ox * d;
    if (dim2) p.y += p.oy * d;
    p.t += d / ctx.c;

    if (p.w < ctx.weight_cutoff * p.w0) {
      // absorb the residual weight where the particle dies
      if (real) tal.EA[tal.cg(p.cell, p.group)] += p.w;
      return;
    }

    if (ev == Event::Census) {
      if (real) {
        tal.EI[tal.cg(p.cell, p.group)] += p.w;
        if (census_out) census_out->push_back(p);
      }
      return;
    }
    if (ev == Event::Scatter) {
      // isotropic re-emission with the group resampled from sigma_g B_g
      const double mu = 1.0 - 2.0 * rng.u();
      const double phi = 2.0 * pi * rng.u();
      const double s = std::sqrt(std::max(0.0, 1.0 - mu * mu));
      p.ox = dim2 ? s * std::cos(phi) : mu;
      p.oy = dim2 ? s * std::sin(phi) : s * std::cos(phi);
      p.oz = dim2 ? mu : s * std::sin(phi);
      const double* cdf = ctx.scatter->group_cdf->data() + std::size_t(p.cell) * G;
      const double u = rng.u();
      int g = 0;
      while (g + 1 < G && u > cdf[g]) ++g;
      if (g != p.group && real) {
        tal.scat_out[p.group] += p.w;
        tal.scat_in[g] += p.w;
      }
      p.group = g;
      continue;
    }

    // face crossing
    // snap the crossing coordinate onto the face to avoid drift
    if (!dim2) {
      p.x = m.edges_1d()[exit_face];
    } else if (exit_axis == 0) {
      const int ix = p.cell % nx;
      p.x = (ix + (sdir > 0 ? 1 : 0)) * hx;
    } else {
      const int iy = p.cell / nx;
      p.y = (iy + (sdir > 0 ? 1 : 0)) * hy;
    }

    if (other >= 0) {
      const std::size_t k = tal.fg(exit_face, p.group);
      if (real)
        tal.FI[k] += sdir * p.w;
      else if (sdir > 0)
        tal.FBp[k] += p.w;
      else
        tal.FBm[k] -= p.w;
      p.cell = other;
      continue;
    }

    // domain boundary
    const BoundaryCond& b = ctx.bc[bside];
    if (b.kind == BoundaryKind::Reflective) {
      if (exit_axis == 0)
        p.ox = -p.ox;
      else
        p.oy = -p.oy;
      continue;
    }
    const std::size_t k = tal.fg(exit_face, p.group);
    if (real) {
      tal.FI[k] += sdir * p.w;
      tal.leak[std::size_t(bside) * G + p.group] += p.w;
    } else if (sdir > 0) {
      tal.FBp[k] += p.w;
    } else {
      tal.FBm[k] -= p.w;
    }
    return;
  }
}

void track_all(const std::vector<Particle>& particles, const TrackContext& ctx,
               TallySet& tal, std::vector<Particle>* census_out, int nthreads) {
  const std::size_t np = particles.size();
  if (np == 0) return;
  const int nb = static_cast<int>((np + kTrackBlock - 1) / kTrackBlock);
  if (nthreads < 1) nthreads = 1;

  std::atomic<int> next_block{0};
  std::mutex mtx;
  std::condition_variable cv;
  int merge_turn = 0;
  std::exception_ptr err;

  auto worker = [&] {
    TallySet scratch(tal.ncells(), tal.ngroups(),
                     static_cast<int>(tal.FI.size() / tal.ngroups()));
    std::vector<Particle> cens;
    while (true) {
      const int b = next_block.fetch_add(1);
      if (b >= nb) break;
      scratch.zero();
      cens.clear();
      const std::size_t lo = std::size_t(b) * kTrackBlock;
      const std::size_t hi = std::min(np, lo + kTrackBlock);
      try {
        for (std::size_t i = lo; i < hi; ++i)
          track(particles[i], ctx, scratch, census_out ? &cens : nullptr, i);
      } catch (...) {
        std::lock_guard<std::mutex> lk(mtx);
        if (!err) err = std::current_exception();
      }
      // fold in block order so the reduction is thread-count independent
      std::unique_lock<std::mutex> lk(mtx);
      cv.wait(lk, [&] { return merge_turn == b; });
      tal.add(scratch);
      if (census_out)
        census_out->insert(census_out->end(), cens.begin(), cens.end());
      ++merge_turn;
      cv.notify_all();
    }
  };

  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (err) std::rethrow_exception(err);
}

}  // namespace rt
