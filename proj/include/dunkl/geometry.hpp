#ifndef DUNKL_GEOMETRY_HPP
#define DUNKL_GEOMETRY_HPP

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "dunkl/common.hpp"
#include "dunkl/root_system.hpp"

namespace dunkl {

// Bounded open domain: axis-aligned box, ball, or indicator over a bounding box.
class DomainSpec {
 public:
  enum class Kind { box, ball, mask };
  using Indicator = std::function<bool(std::span<const double>)>;

  static DomainSpec box(Vec lower, Vec upper);
  static DomainSpec ball(Vec center, double radius);
  static DomainSpec mask(Vec lower, Vec upper, Indicator inside);

  Kind kind() const { return kind_; }
  int dimension() const { return dimension_; }
  // open-set membership
  bool contains(std::span<const double> x) const;
  std::span<const double> lower() const { return lower_; }
  std::span<const double> upper() const { return upper_; }
  std::span<const double> center() const { return center_; }
  double radius() const { return radius_; }

 private:
  DomainSpec() = default;
  Kind kind_ = Kind::box;
  int dimension_ = 0;
  Vec lower_, upper_;  // box bounds, or bounding box for ball/mask
  Vec center_;
  double radius_ = 0.0;
  Indicator inside_;
};

enum class NodeClass : unsigned char { exterior = 0, interior = 1, ring = 2 };

// Uniform lattice covering the domain, with per-node classification.
// Box grids are aligned so that box faces lie exactly on lattice planes and the
// Dirichlet ring sits exactly on the boundary. Ball and mask grids use the
// nearest exterior lattice nodes as the ring (first-order boundary placement).
class GridDomain {
 public:
  GridDomain(DomainSpec domain, double h);

  const DomainSpec& domain() const { return domain_; }
  int dimension() const { return dimension_; }
  double spacing() const { return h_; }
  std::span<const double> origin() const { return origin_; }
  std::span<const int> extents() const { return extents_; }

  std::size_t node_count() const { return classes_.size(); }
  NodeClass node_class(std::size_t node) const { return classes_[node]; }
  void node_coords(std::size_t node, std::span<double> out) const;
  Vec node_coords(std::size_t node) const;

  const std::vector<std::size_t>& interior_nodes() const { return interior_; }
  const std::vector<std::size_t>& ring_nodes() const { return ring_; }
  // ordinal of a node within interior_nodes(), or npos
  std::size_t interior_ordinal(std::size_t node) const { return interior_ordinal_[node]; }
  std::size_t ring_ordinal(std::size_t node) const { return ring_ordinal_[node]; }

  // node index one step along an axis, or npos when off the lattice
  std::size_t neighbor(std::size_t node, int axis, int direction) const;

  // lattice node at the given coordinates (within tolerance), or npos
  std::size_t find_node(std::span<const double> x) const;

 private:
  DomainSpec domain_;
  int dimension_;
  double h_;
  Vec origin_;
  std::vector<int> extents_;
  std::vector<std::size_t> strides_;
  std::vector<NodeClass> classes_;
  std::vector<std::size_t> interior_, ring_;
  std::vector<std::size_t> interior_ordinal_, ring_ordinal_;
};

using GridPtr = std::shared_ptr<const GridDomain>;

// Throws GridError when no interior node exists at this resolution or when a
// box side is not an integer multiple of h.
GridDomain discretize(const DomainSpec& domain, double h);
GridPtr discretize_shared(const DomainSpec& domain, double h);

struct AdmissibilityReport {
  bool pass = false;
  bool sign_vector_constant = false;  // one component of R^d minus the hyperplanes
  bool distance_ok = false;           // min distance >= delta
  bool reflections_disjoint = false;  // sigma_alpha(D) does not meet D (sampled)
  double min_hyperplane_distance = 0.0;
  double delta = 0.0;
  std::string detail;
};

// Theorem hypothesis check: the closed domain must stay inside one component of
// the complement of the active reflection hyperplanes, at distance >= delta.
// For boxes and balls the per-root extreme values are exact; for masks the
// check samples lattice nodes (heuristic). Failures are reported, not thrown.
AdmissibilityReport check_admissible(const DomainSpec& domain, const RootSystem& rs,
                                     double delta, const GridDomain* grid = nullptr);

// Exact reflected coordinates sigma_alpha(x) of every interior node, for every
// root. Images of active roots are verified to land outside the domain.
class ReflectedImages {
 public:
  ReflectedImages(const GridDomain& grid, const RootSystem& rs);

  std::span<const double> coords(std::size_t interior_ordinal, std::size_t root) const {
    return {coords_.data() + (interior_ordinal * root_count_ + root) * dim_,
            static_cast<std::size_t>(dim_)};
  }
  std::size_t root_count() const { return root_count_; }

 private:
  std::size_t root_count_;
  std::size_t dim_;
  std::vector<double> coords_;
};

}  // namespace dunkl

#endif
