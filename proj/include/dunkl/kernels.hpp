#ifndef DUNKL_KERNELS_HPP
#define DUNKL_KERNELS_HPP

#include <functional>
#include <span>

#include "dunkl/sparse.hpp"

namespace dunkl::kernels {

// Data-parallel kernels behind assembly, field sampling and the iterative
// solvers. Each has an OpenMP version (the default path) and a serial
// reference implementation kept for tests and the benchmark target.
//
// Reductions are chunked with a fixed chunk layout and summed in chunk order,
// so results are bit-identical regardless of thread count.

void csr_matvec(const CsrMatrix& a, std::span<const double> x, std::span<double> y);
void csr_matvec_serial(const CsrMatrix& a, std::span<const double> x, std::span<double> y);

double dot(std::span<const double> a, std::span<const double> b);
double dot_serial(std::span<const double> a, std::span<const double> b);

// y += alpha * x
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void axpy_serial(double alpha, std::span<const double> x, std::span<double> y);

// x = a + beta * b   (fused form used by the solvers' direction updates)
void scale_add(std::span<const double> a, double beta, std::span<const double> b,
               std::span<double> x);
void scale_add_serial(std::span<const double> a, double beta, std::span<const double> b,
                      std::span<double> x);

double norm_inf(std::span<const double> a);
double norm_inf_serial(std::span<const double> a);

// out[i] = fn(i): node-wise sampling of potentials, weights and sources
void fill_indexed(std::size_t n, const std::function<double(std::size_t)>& fn,
                  std::span<double> out);
void fill_indexed_serial(std::size_t n, const std::function<double(std::size_t)>& fn,
                         std::span<double> out);

}  // namespace dunkl::kernels

#endif
