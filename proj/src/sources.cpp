#include "rt/sources.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "rt/constants.hpp"
#include "rt/rng.hpp"

namespace rt {

std::vector<long long> allocate_counts(std::vector<Bucket>& buckets, long long total) {
  const std::size_t n = buckets.size();
  std::vector<long long> cnt(n, 0);
  double etot = 0.0;
  for (const auto& b : buckets) {
    if (b.energy < 0.0) throw std::invalid_argument("allocate_counts: negative bucket energy");
    etot += b.energy;
  }
  if (etot <= 0.0 || total <= 0) return cnt;

  // floor pass + fractional remainders
  std::vector<std::pair<double, std::size_t>> rem;
  long long used = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (buckets[i].energy <= 0.0) continue;
    const double q = static_cast<double>(total) * (buckets[i].energy / etot);
    const long long c = static_cast<long long>(std::floor(q));
    cnt[i] = c;
    used += c;
    rem.emplace_back(q - c, i);
  }
  std::sort(rem.begin(), rem.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  for (long long k = 0; k < total - used && !rem.empty(); ++k)
    ++cnt[rem[std::size_t(k) % rem.size()].second];

  // every class carrying energy gets at least one particle
  long long class_cnt[5] = {0, 0, 0, 0, 0};
  double class_e[5] = {0, 0, 0, 0, 0};
  for (std::size_t i = 0; i < n; ++i) {
    class_cnt[int(buckets[i].cls)] += cnt[i];
    class_e[int(buckets[i].cls)] += buckets[i].energy;
  }
  for (int c = 0; c < 5; ++c) {
    if (class_e[c] <= 0.0 || class_cnt[c] > 0) continue;
    // steal one particle, preferring a donor class that keeps at least one
    std::size_t donor = n;
    auto better_donor = [&](std::size_t i, std::size_t j) {
      const bool ki = class_cnt[int(buckets[i].cls)] > 1;
      const bool kj = class_cnt[int(buckets[j].cls)] > 1;
      if (ki != kj) return ki;
      return cnt[i] > cnt[j];
    };
    for (std::size_t i = 0; i < n; ++i)
      if (cnt[i] > 0 && (donor == n || better_donor(i, donor))) donor = i;
    if (donor == n) continue;  // total budget exhausted entirely
    std::size_t target = n;
    for (std::size_t i = 0; i < n; ++i)
      if (int(buckets[i].cls) == c && buckets[i].energy > 0.0 &&
          (target == n || buckets[i].energy > buckets[target].energy))
        target = i;
    --cnt[donor];
    --class_cnt[int(buckets[donor].cls)];
    ++cnt[target];
    ++class_cnt[c];
  }

  // merge energy of zero-count buckets into a populated same-class bucket
  for (std::size_t i = 0; i < n; ++i) {
    if (cnt[i] > 0 || buckets[i].energy <= 0.0) continue;
    std::size_t tgt = n;
    for (std::size_t j = 0; j < n; ++j)
      if (cnt[j] > 0 && buckets[j].cls == buckets[i].cls && buckets[j].group == buckets[i].group &&
          (tgt == n || buckets[j].energy > buckets[tgt].energy))
        tgt = j;
    if (tgt == n)
      for (std::size_t j = 0; j < n; ++j)
        if (cnt[j] > 0 && buckets[j].cls == buckets[i].cls &&
            (tgt == n || buckets[j].energy > buckets[tgt].energy))
          tgt = j;
    if (tgt != n) buckets[tgt].energy += buckets[i].energy;
    buckets[i].energy = 0.0;
  }
  return cnt;
}

namespace {

// Random permutation of 0..n-1 used to stratify an additional sampling
// dimension within a bucket without correlating it with the other dimensions.
std::vector<long long> stratum_permutation(RngStream& rng, long long n) {
  std::vector<long long> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0ll);
  for (long long i = n - 1; i > 0; --i) {
    const long long j = std::min<long long>(i, static_cast<long long>(rng.u() * double(i + 1)));
    std::swap(p[std::size_t(i)], p[std::size_t(j)]);
  }
  return p;
}

void isotropic_direction_u(double umu, RngStream& rng, bool dim2, Particle& p) {
  const double mu = 1.0 - 2.0 * umu;
  const double phi = 2.0 * pi * rng.u();
  const double s = std::sqrt(std::max(0.0, 1.0 - mu * mu));
  if (dim2) {
    p.ox = s * std::cos(phi);
    p.oy = s * std::sin(phi);
    p.oz = mu;
  } else {
    p.ox = mu;
    p.oy = s * std::cos(phi);
    p.oz = s * std::sin(phi);
  }
}

void isotropic_direction(RngStream& rng, bool dim2, Particle& p) {
  isotropic_direction_u(rng.u(), rng, dim2, p);
}

// inverse CDF of the tilted in-cell density: u = m y^2 + (1-m) y, y in [0,1]
double tilted_fraction(double u, double m) {
  if (std::abs(m) < 1e-12) return u;
  const double b = 1.0 - m;
  const double disc = b * b + 4.0 * m * u;
  const double y = (-b + std::sqrt(std::max(0.0, disc))) / (2.0 * m);
  return std::clamp(y, 0.0, 1.0);
}

}  // namespace

void sample_cell_uniform(const SampleContext& sc, SourceClass cls, int cell, int group,
                         double energy, long long count, std::uint64_t idx0,
                         std::vector<Particle>& out) {
  if (count <= 0) return;
  const Mesh& m = *sc.mesh;
  const bool dim2 = m.dim() == 2;
  const double w = energy / static_cast<double>(count);
  const double xlo = m.cx(cell) - 0.5 * m.dx(cell);
  const double ylo = dim2 ? m.cy(cell) - 0.5 * m.dy(cell) : 0.0;
  for (long long k = 0; k < count; ++k) {
    RngStream rng(sc.seed, sc.step, std::uint64_t(cls), idx0 + std::uint64_t(k));
    Particle p;
    p.cell = cell;
    p.group = group;
    p.tag = cls;
    p.w = p.w0 = w;
    p.t = sc.t_begin;
    p.x = xlo + rng.u() * m.dx(cell);
    if (dim2) p.y = ylo + rng.u() * m.dy(cell);
    isotropic_direction(rng, dim2, p);
    out.push_back(p);
  }
}

void sample_boundary_face(const SampleContext& sc, SourceClass cls, int face, int group,
                          double energy, long long count, std::uint64_t idx0,
                          std::vector<Particle>& out) {
  if (count <= 0) return;
  const Mesh& m = *sc.mesh;
  const bool dim2 = m.dim() == 2;
  const Interface& fc = m.face(face);
  if (fc.lo >= 0 && fc.hi >= 0)
    throw std::invalid_argument("sample_boundary_face: interior face");
  const int cell = (fc.hi >= 0) ? fc.hi : fc.lo;
  const double ndir = (fc.hi >= 0) ? 1.0 : -1.0;  // inward normal along the face axis
  const double w = energy / static_cast<double>(count);

  // face coordinates
  double fx = 0.0, fy = 0.0, span = 0.0;  // fixed coordinate + tangential span origin
  if (!dim2) {
    fx = m.edges_1d()[face];
  } else if (fc.axis == 0) {
    const int ix_edge = face / m.ny(), iy = face % m.ny();
    fx = ix_edge * m.hx();
    fy = iy * m.hy();
    span = m.hy();
  } else {
    const int k = face - (m.nx() + 1) * m.ny();
    const int iy_edge = k / m.nx(), ix = k % m.nx();
    fy = iy_edge * m.hy();
    fx = ix * m.hx();
    span = m.hx();
  }

  // birth times and inward cosines stratified over the bucket (see
  // sample_emission); the cosine permutation decorrelates the two
  RngStream prng(sc.seed, sc.step, 16 + std::uint64_t(cls), idx0);
  const auto pa = stratum_permutation(prng, count);
  for (long long k = 0; k < count; ++k) {
    RngStream rng(sc.seed, sc.step, std::uint64_t(cls), idx0 + std::uint64_t(k));
    Particle p;
    p.cell = cell;
    p.group = group;
    p.tag = cls;
    p.w = p.w0 = w;
    p.t = sc.t_begin + (double(k) + rng.u()) / double(count) * sc.dt;
    p.x = fx;
    p.y = fy;
    if (dim2) {
      if (fc.axis == 0)
        p.y = fy + rng.u() * span;
      else
        p.x = fx + rng.u() * span;
    }
    // cosine-weighted inward hemisphere
    const double mun =
        std::sqrt((double(pa[std::size_t(k)]) + rng.u()) / double(count));
    const double phi = 2.0 * pi * rng.u();
    const double s = std::sqrt(std::max(0.0, 1.0 - mun * mun));
    const double axis_comp = ndir * mun;
    if (!dim2) {
      p.ox = axis_comp;
      p.oy = s * std::cos(phi);
      p.oz = s * std::sin(phi);
    } else if (fc.axis == 0) {
      p.ox = axis_comp;
      p.oy = s * std::cos(phi);
      p.oz = s * std::sin(phi);
    } else {
      p.oy = axis_comp;
      p.ox = s * std::cos(phi);
      p.oz = s * std::sin(phi);
    }
    out.push_back(p);
  }
}

void sample_emission(const SampleContext& sc, int cell, int group, double energy,
                     long long count, std::uint64_t idx0, const TiltCoeffs& tc,
                     std::vector<Particle>& out) {
  if (count <= 0) return;
  const Mesh& m = *sc.mesh;
  const bool dim2 = m.dim() == 2;
  const double w = energy / static_cast<double>(count);
  const double xlo = m.cx(cell) - 0.5 * m.dx(cell);
  const double ylo = dim2 ? m.cy(cell) - 0.5 * m.dy(cell) : 0.0;
  // Latin-hypercube bucket sampling: birth time, polar direction, and
  // position are each stratified over the bucket, with independent random
  // permutations keeping the dimensions decorrelated. Marginals stay exactly
  // uniform/isotropic/tilted, but the per-bucket spread of the census
  // survival factor e^{-c sigma (t_end - t)} and the imbalance of cross-face
  // migration -- the dominant tally variance in thick cells -- collapse.
  RngStream prng(sc.seed, sc.step, 16 + std::uint64_t(SourceClass::Emission), idx0);
  const auto pa = stratum_permutation(prng, count);
  const auto pb = stratum_permutation(prng, count);
  const auto py = dim2 ? stratum_permutation(prng, count) : std::vector<long long>{};
  for (long long k = 0; k < count; ++k) {
    RngStream rng(sc.seed, sc.step, std::uint64_t(SourceClass::Emission),
                  idx0 + std::uint64_t(k));
    Particle p;
    p.cell = cell;
    p.group = group;
    p.tag = SourceClass::Emission;
    p.w = p.w0 = w;
    p.t = sc.t_begin + (double(k) + rng.u()) / double(count) * sc.dt;
    const double umu = (double(pa[std::size_t(k)]) + rng.u()) / double(count);
    isotropic_direction_u(umu, rng, dim2, p);
    const double mx = (p.ox < 0.0) ? tc.mx_neg : tc.mx_pos;
    const double ux = (double(pb[std::size_t(k)]) + rng.u()) / double(count);
    p.x = xlo + tilted_fraction(ux, mx) * m.dx(cell);
    if (dim2) {
      const double my = (p.oy < 0.0) ? tc.my_neg : tc.my_pos;
      const double uy = (double(py[std::size_t(k)]) + rng.u()) / double(count);
      p.y = ylo + tilted_fraction(uy, my) * m.dy(cell);
    }
    out.push_back(p);
  }
}

// m = slope * dx / (2 * Bbar), clamped so the tilted density stays nonnegative
double tilt_m(double B_here, double B_nbr, double d_here, double d_nbr, double Bbar) {
  if (Bbar <= 0.0) return 0.0;
  const double s = (B_here - B_nbr) / (0.5 * (d_here + d_nbr));
  return std::clamp(s * d_here / (2.0 * Bbar), -1.0, 1.0);
}

// One-sided slope coefficients for cell i; the minus slope serves particles
// flying toward -axis, the plus slope particles flying toward +axis.
TiltCoeffs tilt_coeffs(const Mesh& m, const std::vector<double>& B, int i, int g, int G) {
  TiltCoeffs tc;
  const double Bbar = B[std::size_t(i) * G + g];
  if (m.dim() == 1) {
    const int n = m.ncells();
    if (i > 0)
      tc.mx_neg = tilt_m(Bbar, B[std::size_t(i - 1) * G + g], m.dx(i), m.dx(i - 1), Bbar);
    if (i + 1 < n)
      tc.mx_pos = tilt_m(B[std::size_t(i + 1) * G + g], Bbar, m.dx(i), m.dx(i + 1), Bbar);
  } else {
    const int nx = m.nx(), ny = m.ny();
    const int ix = i % nx, iy = i / nx;
    if (ix > 0) tc.mx_neg = tilt_m(Bbar, B[std::size_t(i - 1) * G + g], m.hx(), m.hx(), Bbar);
    if (ix + 1 < nx)
      tc.mx_pos = tilt_m(B[std::size_t(i + 1) * G + g], Bbar, m.hx(), m.hx(), Bbar);
    if (iy > 0) tc.my_neg = tilt_m(Bbar, B[std::size_t(i - nx) * G + g], m.hy(), m.hy(), Bbar);
    if (iy + 1 < ny)
      tc.my_pos = tilt_m(B[std::size_t(i + nx) * G + g], Bbar, m.hy(), m.hy(), Bbar);
  }
  return tc;
}

}  // namespace rt
