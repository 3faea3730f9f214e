#include <cmath>
#include <stdexcept>
#include <string>

#include "rt/linsolve.hpp"
#include "rt/planck.hpp"
#include "rt/problem.hpp"

namespace rt {

namespace {

constexpr double kTfloor = 1e-6;

// Face conductances K_ij = sum_g (b_g + T/4 db_g/dT)(T_ij) / (3 sigma_g,ij),
// so the diffusive power is K * (phi_j - phi_i)/dist * |S| with phi = a c T^4.
// Boundary faces (non-reflective) use the half-cell distance against the fixed
// value phi_bc.
std::vector<double> conductances(const Problem& pb, const std::vector<double>& T) {
  const Mesh& m = pb.mesh;
  const int G = pb.grid.groups();
  const std::vector<double> sig = opacity_field(m, pb.materials, pb.grid, T);
  std::vector<double> K(m.nfaces(), 0.0);
  for (int f = 0; f < m.nfaces(); ++f) {
    const Interface& fc = m.face(f);
    if (fc.lo >= 0 && fc.hi >= 0) {
      const double di = 0.5 * (fc.axis == 0 ? m.dx(fc.lo) : m.dy(fc.lo));
      const double dj = 0.5 * (fc.axis == 0 ? m.dx(fc.hi) : m.dy(fc.hi));
      const double Tij = interface_temperature(T[fc.lo], T[fc.hi], di, dj);
      double k = 0.0;
      for (int g = 0; g < G; ++g) {
        const double sij = harmonic_interface_opacity(sig[std::size_t(fc.lo) * G + g],
                                                      sig[std::size_t(fc.hi) * G + g], di, dj);
        k += group_derivative_coefficient(pb.grid, g, Tij, pb.pc) / (3.0 * sij);
      }
      K[f] = k;
    } else {
      const BoundaryCond& bc = pb.bc[fc.bside];
      if (bc.kind == BoundaryKind::Reflective) continue;
      const int ic = (fc.hi >= 0) ? fc.hi : fc.lo;
      const double Tb = (bc.kind == BoundaryKind::Planck) ? std::max(bc.T, kTfloor) : kTfloor;
      const double di = 0.5 * (fc.axis == 0 ? m.dx(ic) : m.dy(ic));
      const double Tif = interface_temperature(T[ic], Tb, di, di);
      double k = 0.0;
      for (int g = 0; g < G; ++g)
        k += group_derivative_coefficient(pb.grid, g, Tif, pb.pc) /
             (3.0 * sig[std::size_t(ic) * G + g]);
      K[f] = k;
    }
  }
  return K;
}

double boundary_phi(const Problem& pb, int side, double ac) {
  const BoundaryCond& bc = pb.bc[side];
  if (bc.kind != BoundaryKind::Planck) return 0.0;
  return ac * bc.T * bc.T * bc.T * bc.T;
}

// Residual of the backward-Euler system in T:
// F_i = Cv (T - T^n) + a (T^4 - (T^n)^4) + (dt/V) * net diffusive outflow(T)
std::vector<double> residual(const Problem& pb, const std::vector<double>& K,
                             const std::vector<double>& T, const std::vector<double>& T_n,
                             double dt) {
  const Mesh& m = pb.mesh;
  const int n = m.ncells();
  const double a = pb.pc.a, ac = pb.pc.a * pb.pc.c;
  std::vector<double> F(n);
  for (int i = 0; i < n; ++i) {
    const double Cv = pb.materials[m.material(i)].Cv;
    F[i] = Cv * (T[i] - T_n[i]) +
           a * (T[i] * T[i] * T[i] * T[i] - T_n[i] * T_n[i] * T_n[i] * T_n[i]);
  }
  for (int f = 0; f < m.nfaces(); ++f) {
    const Interface& fc = m.face(f);
    if (K[f] == 0.0) continue;
    if (fc.lo >= 0 && fc.hi >= 0) {
      const double plo = ac * std::pow(T[fc.lo], 4), phi = ac * std::pow(T[fc.hi], 4);
      const double P = K[f] * (plo - phi) / fc.dist * fc.area;  // power lo -> hi
      F[fc.lo] += dt * P / m.volume(fc.lo);
      F[fc.hi] -= dt * P / m.volume(fc.hi);
    } else {
      const int ic = (fc.hi >= 0) ? fc.hi : fc.lo;
      const double P = K[f] * (ac * std::pow(T[ic], 4) - boundary_phi(pb, fc.bside, ac)) /
                       fc.dist * fc.area;
      F[ic] += dt * P / m.volume(ic);
    }
  }
  return F;
}

double norm1(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += std::abs(x);
  return s;
}

}  // namespace

std::vector<double> diffusion_step(const Problem& pb, const std::vector<double>& T_n,
                                   double dt, int* iters_out) {
  const Mesh& m = pb.mesh;
  const int n = m.ncells();
  const double ac = pb.pc.a * pb.pc.c;
  for (double t : T_n)
    if (!(t > 0.0)) throw std::domain_error("diffusion_step: need T > 0");

  // Damped Newton with conductances lagged over outer sweeps; the sharp-front
  // nonlinearity (tiny heat capacity against a strong boundary drive) makes a
  // plain fixed-point sweep diverge, so the linearization must be global.
  std::vector<double> T(T_n);
  for (double& t : T) t = std::max(t, kTfloor);
  int outers = 0;
  bool converged = false;
  for (int outer = 0; outer < pb.picard_max && !converged; ++outer) {
    const std::vector<double> K = conductances(pb, T);
    const std::vector<double> T_outer(T);
    double fscale = 0.0;
    for (int i = 0; i < n; ++i) {
      const double Cv = pb.materials[m.material(i)].Cv;
      fscale += Cv * T_n[i] + pb.pc.a * std::pow(T_n[i], 4);
    }
    double fnorm = norm1(residual(pb, K, T, T_n, dt));
    for (int nit = 0; nit < pb.newton_max; ++nit) {
      if (fnorm < 1e-13 * (fscale + 1e-300)) break;
      const std::vector<double> F = residual(pb, K, T, T_n, dt);
      FaceMatrix J;
      J.n = n;
      J.diag.assign(n, 0.0);
      for (int i = 0; i < n; ++i) {
        const double Cv = pb.materials[m.material(i)].Cv;
        J.diag[i] = Cv + 4.0 * pb.pc.a * T[i] * T[i] * T[i];
      }
      for (int f = 0; f < m.nfaces(); ++f) {
        const Interface& fc = m.face(f);
        if (K[f] == 0.0) continue;
        const double w = K[f] * fc.area / fc.dist;
        if (fc.lo >= 0 && fc.hi >= 0) {
          const double dlo = 4.0 * ac * T[fc.lo] * T[fc.lo] * T[fc.lo];
          const double dhi = 4.0 * ac * T[fc.hi] * T[fc.hi] * T[fc.hi];
          J.diag[fc.lo] += dt * w * dlo / m.volume(fc.lo);
          J.diag[fc.hi] += dt * w * dhi / m.volume(fc.hi);
          FaceMatrix::Coupling cp;
          cp.lo = fc.lo;
          cp.hi = fc.hi;
          cp.coef_lo = -dt * w * dhi / m.volume(fc.lo);
          cp.coef_hi = -dt * w * dlo / m.volume(fc.hi);
          J.couplings.push_back(cp);
        } else {
          const int ic = (fc.hi >= 0) ? fc.hi : fc.lo;
          J.diag[ic] += dt * w * 4.0 * ac * T[ic] * T[ic] * T[ic] / m.volume(ic);
        }
      }
      std::vector<double> rhs(n);
      for (int i = 0; i < n; ++i) rhs[i] = -F[i];
      const std::vector<double> delta =
          (m.dim() == 1) ? solve_tridiagonal(J, rhs) : solve_bicgstab(J, rhs, 1e-12, 20 * n);
      double dnorm = 0.0;
      for (int i = 0; i < n; ++i) dnorm = std::max(dnorm, std::abs(delta[i]));
      if (dnorm < 1e-13) break;

      // backtracking line search with a positivity guard
      double step = 1.0;
      std::vector<double> Tt(n);
      bool accepted = false;
      for (int ls = 0; ls < 30; ++ls) {
        bool pos = true;
        for (int i = 0; i < n; ++i) {
          Tt[i] = T[i] + step * delta[i];
          if (Tt[i] <= 0.0) pos = false;
        }
        if (pos) {
          const double fn = norm1(residual(pb, K, Tt, T_n, dt));
          if (fn <= fnorm * (1.0 - 1e-4 * step) || fn < 1e-300) {
            fnorm = fn;
            accepted = true;
            break;
          }
        }
        step *= 0.5;
      }
      if (!accepted)
        throw std::runtime_error("diffusion_step: line search stalled");
      double dmax = 0.0;
      for (int i = 0; i < n; ++i) {
        dmax = std::max(dmax, std::abs(Tt[i] - T[i]));
        T[i] = std::max(Tt[i], kTfloor);
      }
      if (dmax < 1e-12 * (1.0 + norm1(T))) break;
    }
    outers = outer + 1;
    double incr = 0.0;
    for (int i = 0; i < n; ++i) incr += std::abs(T[i] - T_outer[i]);
    if (incr < pb.picard_tol) converged = true;
  }
  if (!converged) throw std::runtime_error("diffusion_step: no convergence");
  if (iters_out) *iters_out = outers;
  return T;
}

}  // namespace rt
