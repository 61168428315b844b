#ifndef DUNKL_COMMON_HPP
#define DUNKL_COMMON_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dunkl {

using Vec = std::vector<double>;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Evaluation of q, N or Delta_k at a point lying on an active reflection hyperplane.
struct HyperplaneError : Error {
  using Error::Error;
};

// Scalar field evaluated outside its declared region.
struct FieldDomainError : Error {
  using Error::Error;
};

// Discretization failures: empty interior, box side not a multiple of h, ...
struct GridError : Error {
  using Error::Error;
};

struct AdmissibilityError : Error {
  using Error::Error;
};

// Linear solve did not reach the requested residual, or inputs contain NaN.
struct SolverError : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm_sq(std::span<const double> a) { return dot(a, a); }

inline double norm(std::span<const double> a) { return std::sqrt(norm_sq(a)); }

inline constexpr std::size_t npos = static_cast<std::size_t>(-1);

// Deterministic uniform double in [lo, hi) from a 64-bit generator state.
// Kept stdlib-distribution-free so that seeded runs reproduce bit-exactly.
class Uniform {
 public:
  explicit Uniform(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

  std::uint64_t next_bits() {
    // splitmix64
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  double unit() { return static_cast<double>(next_bits() >> 11) * 0x1.0p-53; }

  double range(double lo, double hi) { return lo + (hi - lo) * unit(); }

 private:
  std::uint64_t state_;
};

}  // namespace dunkl

#endif
