#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "dunkl/common.hpp"
#include "dunkl/kernels.hpp"
#include "dunkl/linear_solver.hpp"
#include "dunkl/sparse.hpp"

using namespace dunkl;
namespace k = dunkl::kernels;

namespace {

// 1-D Dirichlet Laplacian, tridiagonal [-1, 2, -1] / h^2
CsrMatrix laplacian_1d(std::size_t n, double h, double shift = 0.0) {
  CsrBuilder b(n, n);
  const double inv_h2 = 1.0 / (h * h);
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) b.push(static_cast<std::uint32_t>(i - 1), -inv_h2);
    b.push(static_cast<std::uint32_t>(i), 2.0 * inv_h2 + shift);
    if (i + 1 < n) b.push(static_cast<std::uint32_t>(i + 1), -inv_h2);
    b.finish_row();
  }
  return b.take();
}

Vec random_vec(Uniform& rng, std::size_t n, double lo = -1.0, double hi = 1.0) {
  Vec v(n);
  for (double& x : v) x = rng.range(lo, hi);
  return v;
}

}  // namespace

TEST_CASE("parallel kernels match the serial reference") {
  Uniform rng(1);
  for (std::size_t n : {17u, 1000u, 5000u, 70001u}) {
    const Vec a = random_vec(rng, n);
    const Vec b = random_vec(rng, n);

    const double ds = k::dot_serial(a, b);
    const double dp = k::dot(a, b);
    CHECK(dp == doctest::Approx(ds).epsilon(1e-13));

    CHECK(k::norm_inf(a) == k::norm_inf_serial(a));  // max is exact

    Vec ys(a), yp(a);
    k::axpy_serial(0.37, b, ys);
    k::axpy(0.37, b, yp);
    CHECK(ys == yp);  // element-wise ops are bit-identical

    Vec zs(n), zp(n);
    k::scale_add_serial(a, -1.7, b, zs);
    k::scale_add(a, -1.7, b, zp);
    CHECK(zs == zp);

    const CsrMatrix m = laplacian_1d(n, 0.01);
    Vec ms(n), mp(n);
    k::csr_matvec_serial(m, a, ms);
    k::csr_matvec(m, a, mp);
    CHECK(ms == mp);

    Vec fs(n), fp(n);
    auto fn = [&](std::size_t i) { return std::sin(static_cast<double>(i)) * a[i]; };
    k::fill_indexed_serial(n, fn, fs);
    k::fill_indexed(n, fn, fp);
    CHECK(fs == fp);
  }
}

TEST_CASE("chunked reductions are deterministic") {
  Uniform rng(2);
  const Vec a = random_vec(rng, 50000);
  const Vec b = random_vec(rng, 50000);
  const double first = k::dot(a, b);
  for (int i = 0; i < 5; ++i) CHECK(k::dot(a, b) == first);
}

TEST_CASE("conjugate gradient solves the 1-D Poisson problem exactly at nodes") {
  // -u'' = 1 on (0,1), u(0) = u(1) = 0: u = x(1-x)/2, exact for the 3-point stencil
  const std::size_t n = 127;
  const double h = 1.0 / static_cast<double>(n + 1);
  const CsrMatrix a = laplacian_1d(n, h);
  Vec b(n, 1.0), x(n);
  const SolveReport report = conjugate_gradient(a, b, x, 1e-12);
  CHECK(report.converged);
  CHECK(report.relative_residual <= 1e-12);
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = h * static_cast<double>(i + 1);
    CHECK(x[i] == doctest::Approx(0.5 * xi * (1.0 - xi)).epsilon(1e-10));
  }
}

TEST_CASE("conjugate gradient handles zero right-hand sides and rejects bad input") {
  const CsrMatrix a = laplacian_1d(10, 0.1);
  Vec b(10, 0.0), x(10, 5.0);
  const SolveReport r = conjugate_gradient(a, b, x, 1e-12);
  CHECK(r.converged);
  for (double v : x) CHECK(v == 0.0);

  b[3] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(conjugate_gradient(a, b, x, 1e-12), SolverError);
}

TEST_CASE("conjugate gradient reports failure on indefinite systems") {
  // 2x2 indefinite matrix
  CsrBuilder b(2, 2);
  b.push(0, 1.0);
  b.finish_row();
  b.push(1, -1.0);
  b.finish_row();
  const CsrMatrix a = b.take();
  Vec rhs = {1.0, 1.0}, x(2);
  CHECK_THROWS_AS(conjugate_gradient(a, rhs, x, 1e-12), SolverError);
}

TEST_CASE("bicgstab solves nonsymmetric advection-diffusion systems") {
  Uniform rng(3);
  const std::size_t n = 500;
  const double h = 1.0 / static_cast<double>(n + 1);
  // -u'' + c u' with central differences: tridiagonal, nonsymmetric
  const double c = 5.0;
  CsrBuilder builder(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const double inv_h2 = 1.0 / (h * h);
    if (i > 0) builder.push(static_cast<std::uint32_t>(i - 1), -inv_h2 - c / (2.0 * h));
    builder.push(static_cast<std::uint32_t>(i), 2.0 * inv_h2);
    if (i + 1 < n) builder.push(static_cast<std::uint32_t>(i + 1), -inv_h2 + c / (2.0 * h));
    builder.finish_row();
  }
  const CsrMatrix a = builder.take();
  const Vec x_true = random_vec(rng, n);
  Vec b(n);
  k::csr_matvec(a, x_true, b);
  Vec x(n);
  const SolveReport report = bicgstab(a, b, x, 1e-12);
  CHECK(report.converged);
  CHECK(report.relative_residual <= 1e-12);
  double err = 0.0;
  for (std::size_t i = 0; i < n; ++i) err = std::max(err, std::fabs(x[i] - x_true[i]));
  CHECK(err <= 1e-6);
}

TEST_CASE("bicgstab matches CG on symmetric systems") {
  Uniform rng(4);
  const std::size_t n = 200;
  const CsrMatrix a = laplacian_1d(n, 0.05, 3.0);
  const Vec b = random_vec(rng, n);
  Vec x1(n), x2(n);
  conjugate_gradient(a, b, x1, 1e-13);
  bicgstab(a, b, x2, 1e-13);
  for (std::size_t i = 0; i < n; ++i) CHECK(x1[i] == doctest::Approx(x2[i]).epsilon(1e-9));
}

TEST_CASE("solvers are deterministic run to run") {
  Uniform rng(5);
  const std::size_t n = 3000;
  const CsrMatrix a = laplacian_1d(n, 1.0 / static_cast<double>(n + 1));
  const Vec b = random_vec(rng, n);
  Vec x1(n), x2(n);
  conjugate_gradient(a, b, x1, 1e-12);
  conjugate_gradient(a, b, x2, 1e-12);
  CHECK(x1 == x2);
}
