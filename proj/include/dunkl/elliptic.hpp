#ifndef DUNKL_ELLIPTIC_HPP
#define DUNKL_ELLIPTIC_HPP

#include <span>
#include <vector>

#include "dunkl/fields.hpp"
#include "dunkl/geometry.hpp"
#include "dunkl/linear_solver.hpp"
#include "dunkl/root_system.hpp"
#include "dunkl/sparse.hpp"

namespace dunkl {

// Sparse symmetric form of -(Delta_h - q) over interior nodes, with the
// standard 2d+1 stencil and the Dirichlet ring eliminated into the right-hand
// side at solve time. Positive definite for q >= 0.
class DiscreteOperator {
 public:
  // q sampled pointwise from the root system's potential at interior nodes.
  DiscreteOperator(GridPtr grid, const RootSystem& rs);
  // classical Laplacian (q == 0)
  explicit DiscreteOperator(GridPtr grid);

  const CsrMatrix& matrix() const { return matrix_; }
  const GridDomain& grid() const { return *grid_; }
  GridPtr grid_ptr() const { return grid_; }
  double spacing() const { return grid_->spacing(); }
  std::span<const double> potential_values() const { return q_; }

  struct RingLink {
    std::size_t interior_ordinal;
    std::size_t ring_node;
  };
  // interior-to-ring couplings, each with stencil coefficient 1/h^2
  std::span<const RingLink> ring_links() const { return links_; }

 private:
  void assemble();
  GridPtr grid_;
  Vec q_;  // per interior ordinal
  CsrMatrix matrix_;
  std::vector<RingLink> links_;
};

struct SolutionField {
  GridPtr grid;
  Vec values;  // per node; NaN on exterior nodes
  double relative_residual = 0.0;
  int iterations = 0;

  double value_at(std::size_t node) const { return values[node]; }
  // restriction to the interior, in interior-ordinal order
  Vec interior_values() const;
};

// Dirichlet data f on the ring (null = 0) and source g on the interior
// (null = 0): solves -(Delta_h - q) u = g with u = f on the ring.
// Rows (f, 0) realize the discrete harmonic extension, rows (0, g) the
// discrete Green potential.
SolutionField solve_schrodinger(const DiscreteOperator& op, const ScalarField* f,
                                const ScalarField* g, double rel_tol = 1e-12);

// same, with data already sampled (f per ring ordinal, g per interior ordinal)
SolutionField solve_schrodinger_sampled(const DiscreteOperator& op,
                                        std::span<const double> f_ring,
                                        std::span<const double> g_interior,
                                        double rel_tol = 1e-12);

// Green potential: vanishes on the ring and outside the domain.
SolutionField green_apply(const DiscreteOperator& op, const ScalarField& g,
                          double rel_tol = 1e-12);

// Row of the discrete Green operator: v = A^{-1} e_x over interior ordinals.
// One symmetric solve per evaluation point.
Vec green_row(const DiscreteOperator& op, std::size_t interior_node, double rel_tol = 1e-12);

// Discrete harmonic-measure weights of an interior node over the ring nodes
// (in ring-ordinal order): weight(y) = sum over links (z,y) of v(z)/h^2 where
// v solves A v = e_x. Sums to 1 when q == 0 and to less than 1 for q != 0.
Vec harmonic_measure_row(const DiscreteOperator& op, std::size_t interior_node,
                         double rel_tol = 1e-12);
Vec harmonic_measure_row_from_green(const DiscreteOperator& op, std::span<const double> v);

}  // namespace dunkl

#endif
