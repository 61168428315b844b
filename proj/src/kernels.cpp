#include "dunkl/kernels.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace dunkl::kernels {

namespace {

constexpr std::size_t kChunks = 64;
constexpr std::size_t kSerialCutoff = 2048;

inline std::size_t chunk_begin(std::size_t n, std::size_t c) {
  return c * (n / kChunks) + std::min(c, n % kChunks);
}

}  // namespace

void csr_matvec_serial(const CsrMatrix& a, std::span<const double> x, std::span<double> y) {
  for (std::size_t r = 0; r < a.rows; ++r) {
    double acc = 0.0;
    for (std::size_t p = a.row_ptr[r]; p < a.row_ptr[r + 1]; ++p)
      acc += a.val[p] * x[a.col[p]];
    y[r] = acc;
  }
}

void csr_matvec(const CsrMatrix& a, std::span<const double> x, std::span<double> y) {
  if (a.rows < kSerialCutoff) {
    csr_matvec_serial(a, x, y);
    return;
  }
#pragma omp parallel for schedule(static)
  for (std::size_t r = 0; r < a.rows; ++r) {
    double acc = 0.0;
    for (std::size_t p = a.row_ptr[r]; p < a.row_ptr[r + 1]; ++p)
      acc += a.val[p] * x[a.col[p]];
    y[r] = acc;
  }
}

double dot_serial(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double dot(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  if (n < kSerialCutoff) return dot_serial(a, b);
  std::array<double, kChunks> partial{};
#pragma omp parallel for schedule(static)
  for (std::size_t c = 0; c < kChunks; ++c) {
    double acc = 0.0;
    const std::size_t end = chunk_begin(n, c + 1);
    for (std::size_t i = chunk_begin(n, c); i < end; ++i) acc += a[i] * b[i];
    partial[c] = acc;
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

void axpy_serial(double alpha, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  if (x.size() < kSerialCutoff) {
    axpy_serial(alpha, x, y);
    return;
  }
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

void scale_add_serial(std::span<const double> a, double beta, std::span<const double> b,
                      std::span<double> x) {
  for (std::size_t i = 0; i < a.size(); ++i) x[i] = a[i] + beta * b[i];
}

void scale_add(std::span<const double> a, double beta, std::span<const double> b,
               std::span<double> x) {
  if (a.size() < kSerialCutoff) {
    scale_add_serial(a, beta, b, x);
    return;
  }
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < a.size(); ++i) x[i] = a[i] + beta * b[i];
}

double norm_inf_serial(std::span<const double> a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::fabs(v));
  return m;
}

double norm_inf(std::span<const double> a) {
  if (a.size() < kSerialCutoff) return norm_inf_serial(a);
  double m = 0.0;
#pragma omp parallel for schedule(static) reduction(max : m)
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i]));
  return m;
}

void fill_indexed_serial(std::size_t n, const std::function<double(std::size_t)>& fn,
                         std::span<double> out) {
  for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
}

void fill_indexed(std::size_t n, const std::function<double(std::size_t)>& fn,
                  std::span<double> out) {
  if (n < 256) {
    fill_indexed_serial(n, fn, out);
    return;
  }
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
}

}  // namespace dunkl::kernels
