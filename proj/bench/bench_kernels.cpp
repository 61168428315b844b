// Timing comparison of the OpenMP kernels against their serial reference
// implementations, on an operator assembled from a realistic configuration.

#include <chrono>
#include <cstdio>
#include <functional>

#include "dunkl/dirichlet.hpp"
#include "dunkl/elliptic.hpp"
#include "dunkl/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using clock_type = std::chrono::steady_clock;

double time_ms(const std::function<void()>& fn, int repeats) {
  fn();  // warm up
  const auto start = clock_type::now();
  for (int i = 0; i < repeats; ++i) fn();
  const auto stop = clock_type::now();
  return std::chrono::duration<double, std::milli>(stop - start).count() /
         static_cast<double>(repeats);
}

void report(const char* name, double serial_ms, double parallel_ms) {
  std::printf("%-28s %10.3f ms %10.3f ms %8.2fx\n", name, serial_ms, parallel_ms,
              serial_ms / parallel_ms);
}

}  // namespace

int main() {
  using namespace dunkl;

  const RootSystem rs = builtin_root_system("B2", std::vector<double>{1.0, 1.0});
  const DomainSpec box = DomainSpec::box({2.0, 0.5}, {4.0, 2.5});
  const GridPtr grid = discretize_shared(box, 1.0 / 128.0);
  const DiscreteOperator op(grid, rs);
  const CsrMatrix& a = op.matrix();
  const std::size_t n = a.rows;

#ifdef _OPENMP
  std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
  std::printf("built without OpenMP; both columns run the serial path\n");
#endif
  std::printf("grid %ldx interior nodes: %zu, nnz: %zu\n\n",
              static_cast<long>(grid->dimension()), n, a.nnz());
  std::printf("%-28s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");

  Vec x(n, 1.0), y(n), z(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = 1.0 + 0.001 * static_cast<double>(i % 97);

  report("csr_matvec",
         time_ms([&] { kernels::csr_matvec_serial(a, x, y); }, 200),
         time_ms([&] { kernels::csr_matvec(a, x, y); }, 200));
  report("dot",
         time_ms([&] { volatile double s = kernels::dot_serial(x, y); (void)s; }, 500),
         time_ms([&] { volatile double s = kernels::dot(x, y); (void)s; }, 500));
  report("axpy",
         time_ms([&] { kernels::axpy_serial(0.5, x, z); }, 500),
         time_ms([&] { kernels::axpy(0.5, x, z); }, 500));

  const auto& interior = grid->interior_nodes();
  const auto sample_q = [&](bool parallel) {
    Vec q(interior.size());
    auto fn = [&](std::size_t o) {
      Vec p(2);
      grid->node_coords(interior[o], p);
      return rs.potential(p);
    };
    if (parallel)
      kernels::fill_indexed(interior.size(), fn, q);
    else
      kernels::fill_indexed_serial(interior.size(), fn, q);
  };
  report("potential sampling",
         time_ms([&] { sample_q(false); }, 20),
         time_ms([&] { sample_q(true); }, 20));

  const BoundaryData f = ScalarField::on_complement(
      box, [](std::span<const double> p) { return p[0] * p[0] * p[1]; });
  const SolverOptions opts;
  const auto solve_once = [&] {
    volatile double v = solve_reduction(grid, rs, f, opts).field.relative_residual;
    (void)v;
  };
  const double solve_ms = time_ms(solve_once, 3);
  std::printf("\nfull reduction solve: %.1f ms (parallel kernels)\n", solve_ms);
  return 0;
}
