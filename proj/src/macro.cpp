#include "rt/macro.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "rt/linsolve.hpp"
#include "rt/planck.hpp"

namespace rt {

double weight_theta(double sigma, double c, double dt, ThetaForm form) {
  if (sigma < 0.0 || dt <= 0.0) throw std::domain_error("weight_theta: need sigma >= 0, dt > 0");
  const double tau = c * sigma * dt;
  if (form == ThetaForm::Exp) return std::exp(-tau);
  if (tau == 0.0) return 1.0;
  return 1.0 - std::exp(-1.0 / tau);
}

double diffusion_coefficient(double theta_ij, double sigma_ij, double c, double dt,
                             double coeff_ij) {
  if (sigma_ij <= 0.0) throw std::domain_error("diffusion_coefficient: need sigma > 0");
  return (1.0 - theta_ij) * (1.0 / (3.0 * sigma_ij)) * (-std::expm1(-c * sigma_ij * dt)) *
         coeff_ij;
}

std::vector<double> opacity_field(const Mesh& mesh, const std::vector<Material>& mats,
                                  const FrequencyGroupGrid& grid,
                                  const std::vector<double>& T) {
  const int n = mesh.ncells(), G = grid.groups();
  std::vector<double> s(std::size_t(n) * G);
  for (int i = 0; i < n; ++i) {
    const OpacityModel& op = mats[mesh.material(i)].opacity;
    for (int g = 0; g < G; ++g) s[std::size_t(i) * G + g] = op.group_average(grid, g, T[i]);
  }
  return s;
}

std::vector<double> planck_fraction_field(const FrequencyGroupGrid& grid,
                                          const std::vector<double>& T,
                                          const PhysicalConstants& pc) {
  const int n = static_cast<int>(T.size()), G = grid.groups();
  std::vector<double> b(std::size_t(n) * G);
  for (int i = 0; i < n; ++i)
    for (int g = 0; g < G; ++g) b[std::size_t(i) * G + g] = group_fraction(grid, g, T[i], pc);
  return b;
}

std::vector<double> planck_coeff_field(const FrequencyGroupGrid& grid,
                                       const std::vector<double>& T,
                                       const PhysicalConstants& pc) {
  const int n = static_cast<int>(T.size()), G = grid.groups();
  std::vector<double> c(std::size_t(n) * G);
  for (int i = 0; i < n; ++i)
    for (int g = 0; g < G; ++g)
      c[std::size_t(i) * G + g] = group_derivative_coefficient(grid, g, T[i], pc);
  return c;
}

namespace {

constexpr double kTfloor = 1e-6;

// non-reflective domain boundary face, with quantities frozen at t^n
struct BFace {
  int face = -1;
  int ic = -1;      // interior cell
  double s = 1.0;   // +1 if the interior cell sits on the hi side of the face
  double phi_half = 0.0;
  std::vector<double> b_half;  // per group, at T_half
  std::vector<double> Ibc;     // per group; zero for vacuum
};

struct Coeffs {
  std::vector<double> sigma, b, coeff, theta, chi;  // (cell, group)
  std::vector<double> beta;                         // per cell
  std::vector<double> D;                            // (face, group); 0 at reflective faces
};

struct Workspace {
  const MacroInput& in;
  const MacroConfig& cfg;
  int n, G, nf;
  std::vector<double> phi_n;  // a c (T^n)^4
  std::vector<BFace> bfaces;
  std::vector<int> face_bface;  // face id -> index into bfaces, or -1

  Workspace(const MacroInput& in_, const MacroConfig& cfg_) : in(in_), cfg(cfg_) {
    const Mesh& m = *in.mesh;
    n = m.ncells();
    G = in.grid->groups();
    nf = m.nfaces();
    const double ac = cfg.pc.a * cfg.pc.c;
    phi_n.resize(n);
    for (int i = 0; i < n; ++i) {
      const double t = (*in.T_n)[i];
      phi_n[i] = ac * t * t * t * t;
    }
    face_bface.assign(nf, -1);
    for (int f = 0; f < nf; ++f) {
      const Interface& fc = m.face(f);
      if (fc.lo >= 0 && fc.hi >= 0) continue;
      const BoundaryCond& bc = in.bc[fc.bside];
      if (bc.kind == BoundaryKind::Reflective) continue;
      BFace bf;
      bf.face = f;
      bf.ic = (fc.hi >= 0) ? fc.hi : fc.lo;
      bf.s = (fc.hi >= 0) ? 1.0 : -1.0;
      double rho_tot = 0.0;
      for (int g = 0; g < G; ++g) rho_tot += (*in.rho_n)[std::size_t(bf.ic) * G + g];
      const double Tb = (bc.kind == BoundaryKind::Planck) ? bc.T : 0.0;
      bf.phi_half = 0.5 * (ac * Tb * Tb * Tb * Tb + rho_tot);
      const double Th = std::max(std::pow(std::max(bf.phi_half, 0.0) / ac, 0.25), kTfloor);
      bf.b_half.resize(G);
      bf.Ibc.assign(G, 0.0);
      for (int g = 0; g < G; ++g) {
        bf.b_half[g] = group_fraction(*in.grid, g, Th, cfg.pc);
        if (bc.kind == BoundaryKind::Planck) bf.Ibc[g] = group_planck(*in.grid, g, Tb, cfg.pc);
      }
      face_bface[f] = static_cast<int>(bfaces.size());
      bfaces.push_back(std::move(bf));
    }
  }

  Coeffs build(const std::vector<double>& T) const {
    const Mesh& m = *in.mesh;
    const double c = cfg.pc.c, dt = in.dt;
    Coeffs co;
    co.sigma = opacity_field(m, *in.materials, *in.grid, T);
    co.b = planck_fraction_field(*in.grid, T, cfg.pc);
    co.coeff = planck_coeff_field(*in.grid, T, cfg.pc);
    co.theta.resize(co.sigma.size());
    co.chi.resize(co.sigma.size());
    const double inv_cdt = 1.0 / (c * dt);
    for (std::size_t k = 0; k < co.sigma.size(); ++k) {
      co.theta[k] = weight_theta(co.sigma[k], c, dt, cfg.theta_form);
      co.chi[k] = co.sigma[k] / (inv_cdt + co.sigma[k]);
    }
    co.beta.resize(n);
    for (int i = 0; i < n; ++i)
      co.beta[i] = 4.0 * cfg.pc.a * c * T[i] * T[i] * T[i] /
                   (*in.materials)[m.material(i)].Cv;
    co.D.assign(std::size_t(nf) * G, 0.0);
    for (int f = 0; f < nf; ++f) {
      const Interface& fc = m.face(f);
      if (fc.lo >= 0 && fc.hi >= 0) {
        const double di = 0.5 * (fc.axis == 0 ? m.dx(fc.lo) : m.dy(fc.lo));
        const double dj = 0.5 * (fc.axis == 0 ? m.dx(fc.hi) : m.dy(fc.hi));
        const double Tij = interface_temperature(T[fc.lo], T[fc.hi], di, dj);
        for (int g = 0; g < G; ++g) {
          const double sij = harmonic_interface_opacity(co.sigma[std::size_t(fc.lo) * G + g],
                                                        co.sigma[std::size_t(fc.hi) * G + g],
                                                        di, dj);
          const double thij = 0.5 * (co.theta[std::size_t(fc.lo) * G + g] +
                                     co.theta[std::size_t(fc.hi) * G + g]);
          co.D[std::size_t(f) * G + g] = diffusion_coefficient(
              thij, sij, c, dt, group_derivative_coefficient(*in.grid, g, Tij, cfg.pc));
        }
      } else if (face_bface[f] >= 0) {
        // half-cell closure: theta, sigma from the interior cell, the
        // derivative coefficient at the face temperature, and a 1/6 factor
        // from <mu^2 1_{mu<0}> / 4pi
        const BFace& bf = bfaces[face_bface[f]];
        const double Th =
            std::max(std::pow(std::max(bf.phi_half, 0.0) / (cfg.pc.a * c), 0.25), kTfloor);
        for (int g = 0; g < G; ++g) {
          const double sh = co.sigma[std::size_t(bf.ic) * G + g];
          const double th = co.theta[std::size_t(bf.ic) * G + g];
          co.D[std::size_t(f) * G + g] =
              0.5 * (1.0 - th) * (1.0 / (3.0 * sh)) * (-std::expm1(-c * sh * dt)) *
              group_derivative_coefficient(*in.grid, g, Th, cfg.pc);
        }
      }
    }
    return co;
  }

  // Oriented convective power sum per (cell, group): MC flux terms plus the
  // analytic non-diffusive boundary-closure terms. [GJ/ns]
  std::vector<double> net_conv(const Coeffs& co) const {
    const Mesh& m = *in.mesh;
    const TallySet& tl = *in.tallies;
    const double dt = in.dt, c = cfg.pc.c;
    std::vector<double> net(std::size_t(n) * G, 0.0);
    for (int f = 0; f < nf; ++f) {
      const Interface& fc = m.face(f);
      if (fc.lo >= 0 && fc.hi >= 0) {
        for (int g = 0; g < G; ++g) {
          const double Fc = (tl.FI[tl.fg(f, g)] -
                             (1.0 - co.theta[std::size_t(fc.lo) * G + g]) * tl.FBp[tl.fg(f, g)] -
                             (1.0 - co.theta[std::size_t(fc.hi) * G + g]) * tl.FBm[tl.fg(f, g)]) /
                            dt;
          net[std::size_t(fc.lo) * G + g] += Fc;
          net[std::size_t(fc.hi) * G + g] -= Fc;
        }
      } else if (face_bface[f] >= 0) {
        const BFace& bf = bfaces[face_bface[f]];
        for (int g = 0; g < G; ++g) {
          const double th = co.theta[std::size_t(bf.ic) * G + g];
          const double E = std::exp(-c * co.sigma[std::size_t(bf.ic) * G + g] * in.dt);
          const double analytic =
              bf.s * (pi * bf.Ibc[g] - 0.25 * (1.0 - th * E) * bf.b_half[g] * bf.phi_half) *
              fc.area;
          const double mc =
              (tl.FI[tl.fg(f, g)] - (1.0 - th) * (tl.FBp[tl.fg(f, g)] + tl.FBm[tl.fg(f, g)])) /
              dt;
          net[std::size_t(bf.ic) * G + g] += -bf.s * (analytic + mc);
        }
      }
    }
    return net;
  }

  // Oriented diffusive power sum per (cell, group) at radiation field phi.
  std::vector<double> net_diff(const Coeffs& co, const std::vector<double>& phi) const {
    const Mesh& m = *in.mesh;
    std::vector<double> net(std::size_t(n) * G, 0.0);
    for (int f = 0; f < nf; ++f) {
      const Interface& fc = m.face(f);
      if (fc.lo >= 0 && fc.hi >= 0) {
        for (int g = 0; g < G; ++g) {
          const double Fd = co.D[std::size_t(f) * G + g] * (phi[fc.hi] - phi[fc.lo]) / fc.dist *
                            fc.area;
          net[std::size_t(fc.lo) * G + g] += Fd;
          net[std::size_t(fc.hi) * G + g] -= Fd;
        }
      } else if (face_bface[f] >= 0) {
        const BFace& bf = bfaces[face_bface[f]];
        for (int g = 0; g < G; ++g)
          net[std::size_t(bf.ic) * G + g] += co.D[std::size_t(f) * G + g] *
                                             (bf.phi_half - phi[bf.ic]) / fc.dist * fc.area;
      }
    }
    return net;
  }

  // Linear prediction solve for phi^{k+1/2}; `net` is net_conv at the iterate.
  std::vector<double> predict(const Coeffs& co, const std::vector<double>& net) const {
    const Mesh& m = *in.mesh;
    const double inv_cdt = 1.0 / (cfg.pc.c * in.dt);
    FaceMatrix A;
    A.n = n;
    A.diag.assign(n, 0.0);
    std::vector<double> rhs(n, 0.0);
    for (int i = 0; i < n; ++i) {
      double diag = 1.0 / (co.beta[i] * in.dt);
      double r = phi_n[i] / (co.beta[i] * in.dt);
      for (int g = 0; g < G; ++g) {
        const std::size_t k = std::size_t(i) * G + g;
        diag += inv_cdt * co.chi[k] * co.b[k];
        r += co.chi[k] * (inv_cdt * (*in.rho_n)[k] - net[k] / m.volume(i));
      }
      A.diag[i] = diag;
      rhs[i] = r;
    }
    for (int f = 0; f < nf; ++f) {
      const Interface& fc = m.face(f);
      if (fc.lo >= 0 && fc.hi >= 0) {
        double wlo = 0.0, whi = 0.0;
        for (int g = 0; g < G; ++g) {
          const double Dg = co.D[std::size_t(f) * G + g] * fc.area / fc.dist;
          wlo += co.chi[std::size_t(fc.lo) * G + g] * Dg;
          whi += co.chi[std::size_t(fc.hi) * G + g] * Dg;
        }
        A.diag[fc.lo] += wlo / m.volume(fc.lo);
        A.diag[fc.hi] += whi / m.volume(fc.hi);
        FaceMatrix::Coupling cp;
        cp.lo = fc.lo;
        cp.hi = fc.hi;
        cp.coef_lo = -wlo / m.volume(fc.lo);
        cp.coef_hi = -whi / m.volume(fc.hi);
        A.couplings.push_back(cp);
      } else if (face_bface[f] >= 0) {
        const BFace& bf = bfaces[face_bface[f]];
        double w = 0.0;
        for (int g = 0; g < G; ++g)
          w += co.chi[std::size_t(bf.ic) * G + g] * co.D[std::size_t(f) * G + g] * fc.area /
               fc.dist;
        A.diag[bf.ic] += w / m.volume(bf.ic);
        rhs[bf.ic] += w * bf.phi_half / m.volume(bf.ic);
      }
    }
    if (m.dim() == 1) return solve_tridiagonal(A, rhs);
    return solve_bicgstab(A, rhs, 1e-12, 10 * n);
  }
};

}  // namespace

double correction_root(const FrequencyGroupGrid& grid, const double* chi, int G, double Cv,
                       double A, double t0, const MacroConfig& cfg) {
  if (!(A > 0.0)) throw std::domain_error("correction_root: need A > 0");
  double t = std::max(t0, kTfloor);
  double fval = 0.0;
  const double Cva = cfg.pc.a / Cv;
  for (int nit = 0; nit < cfg.newton_max; ++nit) {
    double s1 = 0.0, s2 = 0.0;
    for (int g = 0; g < G; ++g) {
      s1 += chi[g] * group_fraction(grid, g, t, cfg.pc);
      s2 += chi[g] * group_derivative_coefficient(grid, g, t, cfg.pc);
    }
    fval = t + Cva * s1 * t * t * t * t - A;
    const double fp = 1.0 + 4.0 * Cva * s2 * t * t * t;
    double dt_step = -fval / fp;
    double tn = t + dt_step;
    while (tn <= 0.0) {
      dt_step *= 0.5;
      tn = t + dt_step;
    }
    t = tn;
    if (std::abs(dt_step) < cfg.newton_tol) return t;
  }
  throw std::runtime_error("correction_root: Newton failed, residual " + std::to_string(fval));
}

MacroResult picard_solve(const MacroInput& in, const MacroConfig& cfg) {
  if (!in.mesh || !in.grid || !in.materials || !in.bc || !in.rho_n || !in.T_n || !in.tallies)
    throw std::invalid_argument("picard_solve: incomplete input");
  Workspace ws(in, cfg);
  const Mesh& m = *in.mesh;
  const int n = ws.n, G = ws.G;
  const double ac = cfg.pc.a * cfg.pc.c;
  const double inv_cdt = 1.0 / (cfg.pc.c * in.dt);

  std::vector<double> T(*in.T_n);
  for (double& t : T) t = std::max(t, kTfloor);
  MacroResult res;
  bool converged = false;
  for (int it = 0; it < cfg.picard_max && !converged; ++it) {
    const Coeffs co = ws.build(T);
    const std::vector<double> net = ws.net_conv(co);
    const std::vector<double> phi_half = ws.predict(co, net);

    std::vector<double> Th(n);
    for (int i = 0; i < n; ++i)
      Th[i] = std::max(std::pow(std::max(phi_half[i], 0.0) / ac, 0.25), kTfloor);
    const Coeffs co2 = ws.build(Th);
    const std::vector<double> net2 = ws.net_conv(co2);
    const std::vector<double> nd2 = ws.net_diff(co2, phi_half);

    std::vector<double> Tnew(n);
    for (int i = 0; i < n; ++i) {
      const double Cv = (*in.materials)[m.material(i)].Cv;
      double A = (*in.T_n)[i];
      for (int g = 0; g < G; ++g) {
        const std::size_t k = std::size_t(i) * G + g;
        A += (in.dt / Cv) * co2.chi[k] *
             (inv_cdt * (*in.rho_n)[k] - (net2[k] - nd2[k]) / m.volume(i));
      }
      if (A <= 0.0) {
        // statistically starved cell: T + c T^4 = A has no positive root
        Tnew[i] = kTfloor;
        ++res.floor_clamps;
        continue;
      }
      double t;
      try {
        t = correction_root(*in.grid, co2.chi.data() + std::size_t(i) * G, G, Cv, A, Th[i],
                            cfg);
      } catch (const std::runtime_error& e) {
        throw std::runtime_error("picard correction: cell " + std::to_string(i) + ": " +
                                 e.what());
      }
      Tnew[i] = std::max(t, kTfloor);
    }

    double incr = 0.0;
    for (int i = 0; i < n; ++i) incr += std::abs(Tnew[i] - T[i]);
    T = std::move(Tnew);
    res.picard_iters = it + 1;
    res.last_increment = incr;
    if (incr < cfg.picard_tol) converged = true;
  }
  if (!converged)
    throw std::runtime_error("picard_solve: no convergence, last increment " +
                             std::to_string(res.last_increment));

  // recover the group densities from the eliminated update
  const Coeffs cof = ws.build(T);
  std::vector<double> phi(n);
  for (int i = 0; i < n; ++i) phi[i] = ac * T[i] * T[i] * T[i] * T[i];
  const std::vector<double> netf = ws.net_conv(cof);
  const std::vector<double> ndf = ws.net_diff(cof, phi);
  res.rho.resize(std::size_t(n) * G);
  for (int i = 0; i < n; ++i)
    for (int g = 0; g < G; ++g) {
      const std::size_t k = std::size_t(i) * G + g;
      res.rho[k] = (inv_cdt * (*in.rho_n)[k] + cof.sigma[k] * cof.b[k] * phi[i] -
                    (netf[k] - ndf[k]) / m.volume(i)) /
                   (inv_cdt + cof.sigma[k]);
    }
  res.T = std::move(T);
  res.sigma = cof.sigma;
  res.b = cof.b;
  return res;
}

}  // namespace rt
