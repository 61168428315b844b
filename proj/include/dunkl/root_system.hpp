#ifndef DUNKL_ROOT_SYSTEM_HPP
#define DUNKL_ROOT_SYSTEM_HPP

#include <span>
#include <string>
#include <vector>

#include "dunkl/common.hpp"

namespace dunkl {

// A positive subsystem R+ with one multiplicity per positive root.
// Roots are stored unnormalized; every formula carries |alpha|^2 explicitly,
// so the |alpha|^2 = 1 vs 2 convention is the caller's choice.
//
// Immutable after construction; all member functions are pure.
class RootSystem {
 public:
  // orbits are optional metadata (builtin catalog); empty means unknown
  RootSystem(int dimension, std::vector<Vec> positive_roots, std::vector<double> multiplicities,
             std::vector<int> orbits = {});

  // k == 0 everywhere: no roots, all Dunkl terms vanish.
  static RootSystem trivial(int dimension);

  int dimension() const { return dimension_; }
  std::size_t root_count() const { return roots_.size(); }
  std::span<const double> root(std::size_t i) const { return roots_[i]; }
  double multiplicity(std::size_t i) const { return multiplicity_[i]; }
  double root_norm_sq(std::size_t i) const { return norm_sq_[i]; }
  double multiplicity_sum() const { return multiplicity_sum_; }
  bool has_active_roots() const;

  // sigma_alpha x = x - 2 <x,alpha>/|alpha|^2 alpha
  void reflect(std::size_t i, std::span<const double> x, std::span<double> out) const;
  Vec reflected(std::size_t i, std::span<const double> x) const;

  // w_k(x) = prod |<x,alpha>|^{2 k(alpha)}
  double weight(std::span<const double> x) const;
  double sqrt_weight(std::span<const double> x) const;

  // q(x) = sum (|alpha| k(alpha) / <x,alpha>)^2; throws HyperplaneError on an
  // active hyperplane.
  double potential(std::span<const double> x) const;

  // sum_{a,b} k(a)k(b)<a,b>/(<x,a><x,b>)  -  sum_a |a|^2 k(a)^2 / <x,a>^2.
  // Vanishes identically for reflection-closed systems with orbit-invariant k.
  double dunkl_lemma_residual(std::span<const double> x) const;

  // min over active roots of |<x,alpha>| / |alpha|; +inf when k == 0.
  double hyperplane_distance(std::span<const double> x) const;

  struct ClosureReport {
    bool closed = true;           // R = R+ u -R+ stable under every sigma_alpha
    bool orbit_invariant = true;  // k constant along reflections of roots
    std::string detail;
  };
  ClosureReport check_closure(double tol = 1e-9) const;

  // Orbit id per root for builtin systems, -1 for custom ones.
  int orbit(std::size_t i) const { return orbit_[i]; }

 private:
  int dimension_;
  std::vector<Vec> roots_;
  std::vector<double> multiplicity_;
  std::vector<double> norm_sq_;
  std::vector<int> orbit_;
  double multiplicity_sum_ = 0.0;
};

// Catalog: A1, A1xA1, A1xA1xA1, A2, B2, I2(m) written as "I2(5)".
// Multiplicities are per orbit (a single value broadcasts to all orbits).
// B2 order is [k_short, k_long]; even I2(m) is [k_even_index, k_odd_index].
RootSystem builtin_root_system(const std::string& name,
                               std::span<const double> multiplicities);

}  // namespace dunkl

#endif
