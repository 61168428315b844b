#ifndef DUNKL_LINEAR_SOLVER_HPP
#define DUNKL_LINEAR_SOLVER_HPP

#include <span>

#include "dunkl/sparse.hpp"

namespace dunkl {

struct SolveReport {
  bool converged = false;
  int iterations = 0;
  double relative_residual = 0.0;  // true residual |b - Ax| / |b|, recomputed
};

// Conjugate gradients for symmetric positive definite systems. The contract is
// the recomputed true residual, not the recurrence estimate; the iteration
// restarts from the current iterate when rounding stalls the recurrence.
SolveReport conjugate_gradient(const CsrMatrix& a, std::span<const double> b,
                               std::span<double> x, double rel_tol, int max_iter = 0);

// BiCGSTAB for the nonsymmetric systems of the direct discretization.
SolveReport bicgstab(const CsrMatrix& a, std::span<const double> b, std::span<double> x,
                     double rel_tol, int max_iter = 0);

}  // namespace dunkl

#endif
