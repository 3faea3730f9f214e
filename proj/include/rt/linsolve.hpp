#pragma once

#include <functional>
#include <vector>

namespace rt {

// Structured sparse matrix: a diagonal plus one coupling pair per mesh face.
// Row `lo` gets coef_lo on column `hi` and vice versa (values may differ, so
// the matrix need not be symmetric).
struct FaceMatrix {
  int n = 0;
  std::vector<double> diag;
  struct Coupling {
    int lo = -1, hi = -1;
    double coef_lo = 0.0;  // entry (lo, hi)
    double coef_hi = 0.0;  // entry (hi, lo)
  };
  std::vector<Coupling> couplings;

  void matvec(const std::vector<double>& x, std::vector<double>& y) const;
};

// Direct tridiagonal elimination; cells must be ordered along the line.
// Returns the solution; throws on zero pivots.
std::vector<double> solve_tridiagonal(const FaceMatrix& m, const std::vector<double>& rhs);

// Jacobi-preconditioned BiCGStab, relative residual `tol`, at most `max_iter`
// iterations. Throws on non-convergence.
std::vector<double> solve_bicgstab(const FaceMatrix& m, const std::vector<double>& rhs,
                                   double tol, int max_iter);

}  // namespace rt
