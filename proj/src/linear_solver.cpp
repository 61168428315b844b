#include "dunkl/linear_solver.hpp"

#include <cmath>

#include "dunkl/kernels.hpp"

namespace dunkl {

namespace {

namespace k = kernels;

double true_residual(const CsrMatrix& a, std::span<const double> b,
                     std::span<const double> x, std::span<double> scratch) {
  k::csr_matvec(a, x, scratch);
  for (std::size_t i = 0; i < b.size(); ++i) scratch[i] = b[i] - scratch[i];
  return std::sqrt(k::dot(scratch, scratch));
}

bool finite(std::span<const double> v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

int default_iterations(const CsrMatrix& a, int max_iter) {
  if (max_iter > 0) return max_iter;
  return static_cast<int>(std::min<std::size_t>(200000, 40 * a.rows + 200));
}

}  // namespace

SolveReport conjugate_gradient(const CsrMatrix& a, std::span<const double> b,
                               std::span<double> x, double rel_tol, int max_iter) {
  const std::size_t n = a.rows;
  if (!finite(b)) throw SolverError("NaN or Inf in the right-hand side");
  SolveReport report;
  const double bnorm = std::sqrt(k::dot(b, b));
  if (bnorm == 0.0) {
    for (std::size_t i = 0; i < n; ++i) x[i] = 0.0;
    report.converged = true;
    return report;
  }
  max_iter = default_iterations(a, max_iter);

  Vec r(n), p(n), q(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = 0.0;

  int it = 0;
  for (int restart = 0; restart < 4 && it < max_iter; ++restart) {
    k::csr_matvec(a, x, r);
    for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
    double rs = k::dot(r, r);
    if (std::sqrt(rs) <= rel_tol * bnorm) break;
    p.assign(r.begin(), r.end());
    while (it < max_iter) {
      ++it;
      k::csr_matvec(a, p, q);
      const double pq = k::dot(p, q);
      if (!(pq > 0.0)) throw SolverError("conjugate gradient: operator not positive definite");
      const double alpha = rs / pq;
      k::axpy(alpha, p, x);
      k::axpy(-alpha, q, r);
      const double rs_new = k::dot(r, r);
      if (std::sqrt(rs_new) <= 0.5 * rel_tol * bnorm) break;
      k::scale_add(r, rs_new / rs, p, p);
      rs = rs_new;
    }
  }

  report.iterations = it;
  report.relative_residual = true_residual(a, b, x, q) / bnorm;
  report.converged = report.relative_residual <= rel_tol && finite(x);
  if (!report.converged)
    throw SolverError("conjugate gradient did not reach the requested residual (" +
                      std::to_string(report.relative_residual) + ")");
  return report;
}

SolveReport bicgstab(const CsrMatrix& a, std::span<const double> b, std::span<double> x,
                     double rel_tol, int max_iter) {
  const std::size_t n = a.rows;
  if (!finite(b)) throw SolverError("NaN or Inf in the right-hand side");
  SolveReport report;
  const double bnorm = std::sqrt(k::dot(b, b));
  if (bnorm == 0.0) {
    for (std::size_t i = 0; i < n; ++i) x[i] = 0.0;
    report.converged = true;
    return report;
  }
  max_iter = default_iterations(a, max_iter);

  Vec r(n), r0(n), p(n), v(n), s(n), t(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = 0.0;

  int it = 0;
  for (int restart = 0; restart < 8 && it < max_iter; ++restart) {
    k::csr_matvec(a, x, r);
    for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
    if (std::sqrt(k::dot(r, r)) <= 0.5 * rel_tol * bnorm) break;
    r0.assign(r.begin(), r.end());
    p.assign(r.begin(), r.end());
    double rho = k::dot(r0, r);
    bool breakdown = false;
    while (it < max_iter && !breakdown) {
      ++it;
      k::csr_matvec(a, p, v);
      const double r0v = k::dot(r0, v);
      if (r0v == 0.0) {
        breakdown = true;
        break;
      }
      const double alpha = rho / r0v;
      for (std::size_t i = 0; i < n; ++i) s[i] = r[i] - alpha * v[i];
      const double snorm = std::sqrt(k::dot(s, s));
      if (snorm <= 0.25 * rel_tol * bnorm) {
        k::axpy(alpha, p, x);
        break;
      }
      k::csr_matvec(a, s, t);
      const double tt = k::dot(t, t);
      if (tt == 0.0) {
        breakdown = true;
        break;
      }
      const double omega = k::dot(t, s) / tt;
      k::axpy(alpha, p, x);
      k::axpy(omega, s, x);
      for (std::size_t i = 0; i < n; ++i) r[i] = s[i] - omega * t[i];
      const double rnorm = std::sqrt(k::dot(r, r));
      if (rnorm <= 0.25 * rel_tol * bnorm) break;
      const double rho_new = k::dot(r0, r);
      if (rho_new == 0.0 || omega == 0.0) {
        breakdown = true;
        break;
      }
      const double beta = (rho_new / rho) * (alpha / omega);
      for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * (p[i] - omega * v[i]);
      rho = rho_new;
    }
  }

  report.iterations = it;
  report.relative_residual = true_residual(a, b, x, t) / bnorm;
  report.converged = report.relative_residual <= rel_tol && finite(x);
  if (!report.converged)
    throw SolverError("bicgstab did not reach the requested residual (" +
                      std::to_string(report.relative_residual) + ")");
  return report;
}

}  // namespace dunkl
