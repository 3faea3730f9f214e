#include "rt/linsolve.hpp"

#include <cmath>
#include <stdexcept>

namespace rt {

void FaceMatrix::matvec(const std::vector<double>& x, std::vector<double>& y) const {
  y.assign(n, 0.0);
  for (int i = 0; i < n; ++i) y[i] = diag[i] * x[i];
  for (const auto& c : couplings) {
    y[c.lo] += c.coef_lo * x[c.hi];
    y[c.hi] += c.coef_hi * x[c.lo];
  }
}

std::vector<double> solve_tridiagonal(const FaceMatrix& m, const std::vector<double>& rhs) {
  const int n = m.n;
  std::vector<double> lower(n, 0.0), upper(n, 0.0);
  for (const auto& c : m.couplings) {
    if (c.hi != c.lo + 1) throw std::logic_error("tridiagonal solve: non-adjacent coupling");
    upper[c.lo] = c.coef_lo;
    lower[c.hi] = c.coef_hi;
  }
  std::vector<double> d(m.diag), r(rhs);
  for (int i = 1; i < n; ++i) {
    if (d[i - 1] == 0.0) throw std::runtime_error("tridiagonal solve: zero pivot");
    const double w = lower[i] / d[i - 1];
    d[i] -= w * upper[i - 1];
    r[i] -= w * r[i - 1];
  }
  std::vector<double> x(n, 0.0);
  if (d[n - 1] == 0.0) throw std::runtime_error("tridiagonal solve: zero pivot");
  x[n - 1] = r[n - 1] / d[n - 1];
  for (int i = n - 2; i >= 0; --i) x[i] = (r[i] - upper[i] * x[i + 1]) / d[i];
  return x;
}

std::vector<double> solve_bicgstab(const FaceMatrix& m, const std::vector<double>& rhs,
                                   double tol, int max_iter) {
  const int n = m.n;
  std::vector<double> x(n, 0.0), r(rhs), r0, p(n, 0.0), v(n, 0.0), s(n), t(n), y(n), z(n);
  std::vector<double> dinv(n);
  for (int i = 0; i < n; ++i) dinv[i] = (m.diag[i] != 0.0) ? 1.0 / m.diag[i] : 1.0;

  auto dot = [n](const std::vector<double>& a, const std::vector<double>& b) {
    double s2 = 0.0;
    for (int i = 0; i < n; ++i) s2 += a[i] * b[i];
    return s2;
  };
  const double bnorm = std::sqrt(dot(rhs, rhs));
  if (bnorm == 0.0) return x;
  r0 = r;
  double rho = 1.0, alpha = 1.0, omega = 1.0;
  for (int it = 0; it < max_iter; ++it) {
    const double rho1 = dot(r0, r);
    if (rho1 == 0.0) break;
    if (it == 0) {
      p = r;
    } else {
      const double beta = (rho1 / rho) * (alpha / omega);
      for (int i = 0; i < n; ++i) p[i] = r[i] + beta * (p[i] - omega * v[i]);
    }
    rho = rho1;
    for (int i = 0; i < n; ++i) y[i] = dinv[i] * p[i];
    m.matvec(y, v);
    alpha = rho / dot(r0, v);
    for (int i = 0; i < n; ++i) s[i] = r[i] - alpha * v[i];
    if (std::sqrt(dot(s, s)) <= tol * bnorm) {
      for (int i = 0; i < n; ++i) x[i] += alpha * y[i];
      return x;
    }
    for (int i = 0; i < n; ++i) z[i] = dinv[i] * s[i];
    m.matvec(z, t);
    const double tt = dot(t, t);
    omega = (tt != 0.0) ? dot(t, s) / tt : 0.0;
    for (int i = 0; i < n; ++i) {
      x[i] += alpha * y[i] + omega * z[i];
      r[i] = s[i] - omega * t[i];
    }
    if (std::sqrt(dot(r, r)) <= tol * bnorm) return x;
    if (omega == 0.0) break;
  }
  // final residual check against the true residual
  m.matvec(x, t);
  double rn = 0.0;
  for (int i = 0; i < n; ++i) rn += (rhs[i] - t[i]) * (rhs[i] - t[i]);
  if (std::sqrt(rn) <= tol * bnorm) return x;
  throw std::runtime_error("bicgstab: no convergence");
}

}  // namespace rt
