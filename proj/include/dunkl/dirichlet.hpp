#ifndef DUNKL_DIRICHLET_HPP
#define DUNKL_DIRICHLET_HPP

#include <functional>
#include <span>
#include <vector>

#include "dunkl/elliptic.hpp"
#include "dunkl/fields.hpp"
#include "dunkl/geometry.hpp"
#include "dunkl/root_system.hpp"

namespace dunkl {

struct SolverOptions {
  double rel_tol = 1e-12;         // linear-solve relative residual
  double delta = 0.0;             // admissibility margin; 0 selects 2h
  bool check_admissibility = true;
};

struct DunklSolution {
  enum class Method { reduction, direct };
  Method method = Method::reduction;
  SolutionField field;  // h on interior and ring nodes; h = f on the ring exactly
  // Schrodinger ingredients of the reduction, kept for diagnostics:
  // the harmonic extension of f*sqrt(w) and the Green potential of sqrt(w)*Nf.
  SolutionField schrodinger_boundary;
  SolutionField schrodinger_source;
  AdmissibilityReport admissibility;
};

// Solves the Dunkl Dirichlet problem through the Schrodinger reduction:
// h = (H(f sqrt(w)) + G(sqrt(w) Nf)) / sqrt(w), with Nf evaluated at exact
// reflected coordinates through the boundary field (never by interpolation).
DunklSolution solve_reduction(GridPtr grid, const RootSystem& rs, const BoundaryData& f,
                              const SolverOptions& opts = {});

// Direct discretization of the nonlocal strong form: five-point Laplacian,
// central-difference drift, reflection differences moved to the right-hand
// side (admissibility guarantees the reflected points carry known data).
// Independent of the reduction path; used as a cross-check.
DunklSolution solve_direct(GridPtr grid, const RootSystem& rs, const BoundaryData& f,
                           const SolverOptions& opts = {});

// Rank-one reference solution of u'' + (2k/x)u' - (k/x^2) u = -(k/x^2) f(-x)
// on (a,b), 0 < a < b, with u = f at the endpoints. Tridiagonal direct solves
// at spacings h and h/2, Richardson-extrapolated to fourth order; returns the
// n+1 node values including the endpoints. Test oracle; independent of the
// sparse solver stack.
Vec oracle_1d(double k, double a, double b, const std::function<double(double)>& f, int n);

// Discrete Dunkl harmonic measure of an interior node, decomposed into ring
// atoms and one density per active root supported on the reflected copies.
class HarmonicMeasure {
 public:
  struct RootPart {
    std::size_t root;
    Vec mass;  // per interior ordinal; located at sigma_root(node)
  };

  GridPtr grid;
  RootSystem rs;
  std::size_t node = 0;  // evaluation node
  Vec point;
  Vec boundary_mass;  // per ring ordinal
  std::vector<RootPart> parts;
  double boundary_total = 0.0;
  double parts_total = 0.0;
  double total = 0.0;

  // integral of f against the measure; evaluates f at ring nodes and at the
  // exact reflected node locations
  double pair(const ScalarField& f) const;
};

HarmonicMeasure harmonic_measure(GridPtr grid, const RootSystem& rs,
                                 std::span<const double> x, const SolverOptions& opts = {});

// Qualitative hypoellipticity probe: convergence orders of the solution and of
// its second differences for smooth versus kinked boundary data. No pass/fail
// contract; kinks on a reflected copy are expected to degrade the
// second-difference order.
struct ProbeSeries {
  std::vector<double> h;
  std::vector<double> value_change;        // sup difference between levels
  std::vector<double> second_diff_change;  // same for coarse-lattice second differences
  std::vector<double> value_order;
  std::vector<double> second_diff_order;
};

struct ProbeReport {
  ProbeSeries smooth;
  ProbeSeries kinked;
};

ProbeReport smoothness_probe(const DomainSpec& domain, const RootSystem& rs,
                             const BoundaryData& f_smooth, const BoundaryData& f_kinked,
                             std::span<const double> h_ladder,
                             const SolverOptions& opts = {});

// Ladder utilities shared by tests, the CLI and the acceptance suite.
// sup over the coarse grid's interior nodes of |coarse - fine|; every coarse
// node must exist on the fine lattice.
double sup_difference_on_common_nodes(const SolutionField& coarse, const SolutionField& fine);
double sup_interior_error(const SolutionField& s,
                          const std::function<double(std::span<const double>)>& exact);
// log2(e[i] / e[i+1]) for successive halvings
std::vector<double> convergence_orders(std::span<const double> errors);

}  // namespace dunkl

#endif
