#include "dunkl/elliptic.hpp"

#include <cmath>

#include "dunkl/kernels.hpp"

namespace dunkl {

DiscreteOperator::DiscreteOperator(GridPtr grid, const RootSystem& rs)
    : grid_(std::move(grid)) {
  if (rs.dimension() != grid_->dimension())
    throw std::invalid_argument("root system and grid dimension mismatch");
  const auto& interior = grid_->interior_nodes();
  q_.resize(interior.size());
  const std::size_t d = static_cast<std::size_t>(grid_->dimension());
  kernels::fill_indexed(
      interior.size(),
      [&](std::size_t o) {
        Vec x(d);
        grid_->node_coords(interior[o], x);
        if (rs.has_active_roots() &&
            rs.hyperplane_distance(x) <= 1e-12 * std::max(1.0, norm(x)))
          throw HyperplaneError("interior node lies on a reflection hyperplane");
        return rs.potential(x);
      },
      q_);
  assemble();
}

DiscreteOperator::DiscreteOperator(GridPtr grid) : grid_(std::move(grid)) {
  q_.assign(grid_->interior_nodes().size(), 0.0);
  assemble();
}

void DiscreteOperator::assemble() {
  const GridDomain& g = *grid_;
  const int d = g.dimension();
  const double inv_h2 = 1.0 / (g.spacing() * g.spacing());
  const auto& interior = g.interior_nodes();
  CsrBuilder builder(interior.size(), interior.size());

  struct Entry {
    std::uint32_t col;
    double val;
  };
  std::vector<Entry> row;
  row.reserve(2 * static_cast<std::size_t>(d) + 1);

  for (std::size_t o = 0; o < interior.size(); ++o) {
    const std::size_t node = interior[o];
    row.clear();
    row.push_back({static_cast<std::uint32_t>(o), 2.0 * d * inv_h2 + q_[o]});
    for (int axis = 0; axis < d; ++axis) {
      for (int dir = -1; dir <= 1; dir += 2) {
        const std::size_t nb = g.neighbor(node, axis, dir);
        if (nb == npos) continue;
        switch (g.node_class(nb)) {
          case NodeClass::interior:
            row.push_back({static_cast<std::uint32_t>(g.interior_ordinal(nb)), -inv_h2});
            break;
          case NodeClass::ring:
            links_.push_back({o, nb});
            break;
          case NodeClass::exterior:
            throw GridError("interior node has an exterior axis neighbor");
        }
      }
    }
    std::sort(row.begin(), row.end(),
              [](const Entry& a, const Entry& b) { return a.col < b.col; });
    for (const Entry& e : row) builder.push(e.col, e.val);
    builder.finish_row();
  }
  matrix_ = builder.take();
}

Vec SolutionField::interior_values() const {
  const auto& interior = grid->interior_nodes();
  Vec out(interior.size());
  for (std::size_t o = 0; o < interior.size(); ++o) out[o] = values[interior[o]];
  return out;
}

namespace {

SolutionField assemble_solution(const DiscreteOperator& op, std::span<const double> u,
                                std::span<const double> f_ring, const SolveReport& report) {
  const GridDomain& g = op.grid();
  SolutionField s;
  s.grid = op.grid_ptr();
  s.values.assign(g.node_count(), std::numeric_limits<double>::quiet_NaN());
  const auto& interior = g.interior_nodes();
  for (std::size_t o = 0; o < interior.size(); ++o) s.values[interior[o]] = u[o];
  const auto& ring = g.ring_nodes();
  for (std::size_t r = 0; r < ring.size(); ++r)
    s.values[ring[r]] = f_ring.empty() ? 0.0 : f_ring[r];
  s.relative_residual = report.relative_residual;
  s.iterations = report.iterations;
  return s;
}

}  // namespace

SolutionField solve_schrodinger_sampled(const DiscreteOperator& op,
                                        std::span<const double> f_ring,
                                        std::span<const double> g_interior,
                                        double rel_tol) {
  const GridDomain& g = op.grid();
  const std::size_t n = g.interior_nodes().size();
  const double inv_h2 = 1.0 / (g.spacing() * g.spacing());

  Vec rhs(n, 0.0);
  if (!g_interior.empty()) {
    if (g_interior.size() != n) throw std::invalid_argument("source vector size mismatch");
    rhs.assign(g_interior.begin(), g_interior.end());
  }
  if (!f_ring.empty()) {
    if (f_ring.size() != g.ring_nodes().size())
      throw std::invalid_argument("boundary vector size mismatch");
    for (const auto& link : op.ring_links())
      rhs[link.interior_ordinal] += inv_h2 * f_ring[g.ring_ordinal(link.ring_node)];
  }
  for (double v : rhs)
    if (!std::isfinite(v)) throw SolverError("NaN or Inf in assembled right-hand side");

  Vec u(n);
  const SolveReport report = conjugate_gradient(op.matrix(), rhs, u, rel_tol);
  return assemble_solution(op, u, f_ring, report);
}

SolutionField solve_schrodinger(const DiscreteOperator& op, const ScalarField* f,
                                const ScalarField* g, double rel_tol) {
  const GridDomain& grid = op.grid();
  const std::size_t d = static_cast<std::size_t>(grid.dimension());

  Vec f_ring;
  if (f != nullptr) {
    const auto& ring = grid.ring_nodes();
    f_ring.resize(ring.size());
    kernels::fill_indexed(
        ring.size(),
        [&](std::size_t r) {
          Vec x(d);
          grid.node_coords(ring[r], x);
          return (*f)(x);
        },
        f_ring);
  }
  Vec g_interior;
  if (g != nullptr) {
    const auto& interior = grid.interior_nodes();
    g_interior.resize(interior.size());
    kernels::fill_indexed(
        interior.size(),
        [&](std::size_t o) {
          Vec x(d);
          grid.node_coords(interior[o], x);
          return (*g)(x);
        },
        g_interior);
  }
  return solve_schrodinger_sampled(op, f_ring, g_interior, rel_tol);
}

SolutionField green_apply(const DiscreteOperator& op, const ScalarField& g, double rel_tol) {
  return solve_schrodinger(op, nullptr, &g, rel_tol);
}

Vec green_row(const DiscreteOperator& op, std::size_t interior_node, double rel_tol) {
  const GridDomain& g = op.grid();
  const std::size_t o = g.interior_ordinal(interior_node);
  if (o == npos) throw std::invalid_argument("green_row requires an interior node");
  const std::size_t n = g.interior_nodes().size();
  Vec e(n, 0.0);
  e[o] = 1.0;
  Vec v(n);
  conjugate_gradient(op.matrix(), e, v, rel_tol);
  return v;
}

Vec harmonic_measure_row_from_green(const DiscreteOperator& op, std::span<const double> v) {
  const GridDomain& g = op.grid();
  const double inv_h2 = 1.0 / (g.spacing() * g.spacing());
  Vec w(g.ring_nodes().size(), 0.0);
  for (const auto& link : op.ring_links())
    w[g.ring_ordinal(link.ring_node)] += inv_h2 * v[link.interior_ordinal];
  return w;
}

Vec harmonic_measure_row(const DiscreteOperator& op, std::size_t interior_node,
                         double rel_tol) {
  const Vec v = green_row(op, interior_node, rel_tol);
  return harmonic_measure_row_from_green(op, v);
}

}  // namespace dunkl
