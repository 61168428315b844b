#include "dunkl/dirichlet.hpp"

#include <algorithm>
#include <cmath>

#include "dunkl/kernels.hpp"

namespace dunkl {

namespace {

AdmissibilityReport require_admissible(const GridDomain& grid, const RootSystem& rs,
                                       const SolverOptions& opts) {
  const double delta = opts.delta > 0.0 ? opts.delta : 2.0 * grid.spacing();
  AdmissibilityReport report = check_admissible(grid.domain(), rs, delta, &grid);
  if (opts.check_admissibility && !report.pass)
    throw AdmissibilityError("domain is not admissible: " + report.detail);
  return report;
}

Vec sample_ring(const GridDomain& grid, const ScalarField& f) {
  const auto& ring = grid.ring_nodes();
  const std::size_t d = static_cast<std::size_t>(grid.dimension());
  Vec out(ring.size());
  kernels::fill_indexed(
      ring.size(),
      [&](std::size_t r) {
        Vec x(d);
        grid.node_coords(ring[r], x);
        return f(x);
      },
      out);
  return out;
}

}  // namespace

DunklSolution solve_reduction(GridPtr grid, const RootSystem& rs, const BoundaryData& f,
                              const SolverOptions& opts) {
  DunklSolution sol;
  sol.method = DunklSolution::Method::reduction;
  sol.admissibility = require_admissible(*grid, rs, opts);

  const GridDomain& g = *grid;
  const std::size_t d = static_cast<std::size_t>(g.dimension());
  const auto& interior = g.interior_nodes();
  const DiscreteOperator op(grid, rs);
  const ReflectedImages images(g, rs);

  // Dirichlet data f * sqrt(w) on the ring
  const Vec f_ring = sample_ring(g, f);
  Vec fw_ring(f_ring.size());
  kernels::fill_indexed(
      f_ring.size(),
      [&](std::size_t r) {
        Vec x(d);
        g.node_coords(g.ring_nodes()[r], x);
        return f_ring[r] * rs.sqrt_weight(x);
      },
      fw_ring);

  // source sqrt(w) * Nf with Nf at exact reflected coordinates
  Vec sw(interior.size()), source(interior.size());
  kernels::fill_indexed(
      interior.size(),
      [&](std::size_t o) {
        Vec x(d);
        g.node_coords(interior[o], x);
        return rs.sqrt_weight(x);
      },
      sw);
  kernels::fill_indexed(
      interior.size(),
      [&](std::size_t o) {
        Vec x(d);
        g.node_coords(interior[o], x);
        double nf = 0.0;
        for (std::size_t r = 0; r < rs.root_count(); ++r) {
          const double k = rs.multiplicity(r);
          if (k == 0.0) continue;
          const double s = dot(x, rs.root(r));
          nf += rs.root_norm_sq(r) * k / (s * s) * f(images.coords(o, r));
        }
        return sw[o] * nf;
      },
      source);

  sol.schrodinger_boundary = solve_schrodinger_sampled(op, fw_ring, {}, opts.rel_tol);
  sol.schrodinger_source = solve_schrodinger_sampled(op, {}, source, opts.rel_tol);

  sol.field.grid = grid;
  sol.field.values.assign(g.node_count(), std::numeric_limits<double>::quiet_NaN());
  for (std::size_t o = 0; o < interior.size(); ++o) {
    const std::size_t node = interior[o];
    sol.field.values[node] =
        (sol.schrodinger_boundary.values[node] + sol.schrodinger_source.values[node]) / sw[o];
  }
  const auto& ring = g.ring_nodes();
  for (std::size_t r = 0; r < ring.size(); ++r) sol.field.values[ring[r]] = f_ring[r];
  sol.field.relative_residual = std::max(sol.schrodinger_boundary.relative_residual,
                                         sol.schrodinger_source.relative_residual);
  sol.field.iterations =
      sol.schrodinger_boundary.iterations + sol.schrodinger_source.iterations;
  return sol;
}

DunklSolution solve_direct(GridPtr grid, const RootSystem& rs, const BoundaryData& f,
                           const SolverOptions& opts) {
  DunklSolution sol;
  sol.method = DunklSolution::Method::direct;
  sol.admissibility = require_admissible(*grid, rs, opts);

  const GridDomain& g = *grid;
  const int d = g.dimension();
  const double h = g.spacing();
  const double inv_h2 = 1.0 / (h * h);
  const double inv_2h = 1.0 / (2.0 * h);
  const auto& interior = g.interior_nodes();
  const std::size_t n = interior.size();
  const ReflectedImages images(g, rs);
  const Vec f_ring = sample_ring(g, f);

  CsrBuilder builder(n, n);
  Vec rhs(n, 0.0);
  struct Entry {
    std::uint32_t col;
    double val;
  };
  std::vector<Entry> row;
  Vec x(static_cast<std::size_t>(d)), drift(static_cast<std::size_t>(d));

  for (std::size_t o = 0; o < n; ++o) {
    const std::size_t node = interior[o];
    g.node_coords(node, x);

    // drift 2 sum k a/<a,x>, reflection coefficient c = sum |a|^2 k/<a,x>^2,
    // and the known reflected data moved to the right-hand side
    std::fill(drift.begin(), drift.end(), 0.0);
    double c = 0.0;
    double reflected_load = 0.0;
    for (std::size_t r = 0; r < rs.root_count(); ++r) {
      const double k = rs.multiplicity(r);
      if (k == 0.0) continue;
      const double s = dot(x, rs.root(r));
      if (s == 0.0) throw HyperplaneError("interior node lies on a reflection hyperplane");
      const double w = rs.root_norm_sq(r) * k / (s * s);
      c += w;
      reflected_load += w * f(images.coords(o, r));
      const double dc = 2.0 * k / s;
      for (int j = 0; j < d; ++j)
        drift[static_cast<std::size_t>(j)] += dc * rs.root(r)[static_cast<std::size_t>(j)];
    }

    row.clear();
    row.push_back({static_cast<std::uint32_t>(o), 2.0 * d * inv_h2 + c});
    rhs[o] += reflected_load;
    for (int axis = 0; axis < d; ++axis) {
      for (int dir = -1; dir <= 1; dir += 2) {
        const std::size_t nb = g.neighbor(node, axis, dir);
        if (nb == npos) throw GridError("interior node has no axis neighbor");
        const double coeff = inv_h2 + dir * drift[static_cast<std::size_t>(axis)] * inv_2h;
        if (g.node_class(nb) == NodeClass::interior) {
          row.push_back({static_cast<std::uint32_t>(g.interior_ordinal(nb)), -coeff});
        } else {
          rhs[o] += coeff * f_ring[g.ring_ordinal(nb)];
        }
      }
    }
    std::sort(row.begin(), row.end(),
              [](const Entry& a, const Entry& b) { return a.col < b.col; });
    for (const Entry& e : row) builder.push(e.col, e.val);
    builder.finish_row();
  }

  const CsrMatrix a = builder.take();
  Vec u(n);
  // without active roots the drift and reflection terms vanish and the system
  // is the symmetric Dirichlet Laplacian
  const SolveReport report = rs.has_active_roots() ? bicgstab(a, rhs, u, opts.rel_tol)
                                                   : conjugate_gradient(a, rhs, u, opts.rel_tol);

  sol.field.grid = grid;
  sol.field.values.assign(g.node_count(), std::numeric_limits<double>::quiet_NaN());
  for (std::size_t o = 0; o < n; ++o) sol.field.values[interior[o]] = u[o];
  const auto& ring = g.ring_nodes();
  for (std::size_t r = 0; r < ring.size(); ++r) sol.field.values[ring[r]] = f_ring[r];
  sol.field.relative_residual = report.relative_residual;
  sol.field.iterations = report.iterations;
  return sol;
}

namespace {

// Thomas algorithm; diag/lower/upper indexed by unknown
Vec tridiagonal_solve(Vec lower, Vec diag, Vec upper, Vec rhs) {
  const std::size_t n = diag.size();
  for (std::size_t i = 1; i < n; ++i) {
    const double m = lower[i] / diag[i - 1];
    diag[i] -= m * upper[i - 1];
    rhs[i] -= m * rhs[i - 1];
  }
  Vec u(n);
  u[n - 1] = rhs[n - 1] / diag[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) u[i] = (rhs[i] - upper[i] * u[i + 1]) / diag[i];
  return u;
}

// second-order solve of the rank-one equation at n cells; values at the n-1
// interior nodes
Vec oracle_1d_level(double k, double a, double b, const std::function<double(double)>& f,
                    int n) {
  const double h = (b - a) / static_cast<double>(n);
  const std::size_t m = static_cast<std::size_t>(n - 1);
  Vec lower(m), diag(m), upper(m), rhs(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double x = a + h * static_cast<double>(i + 1);
    lower[i] = 1.0 / (h * h) - k / (x * h);
    diag[i] = -2.0 / (h * h) - k / (x * x);
    upper[i] = 1.0 / (h * h) + k / (x * h);
    rhs[i] = -(k / (x * x)) * f(-x);
  }
  rhs[0] -= lower[0] * f(a);
  rhs[m - 1] -= upper[m - 1] * f(b);
  return tridiagonal_solve(std::move(lower), std::move(diag), std::move(upper),
                           std::move(rhs));
}

}  // namespace

Vec oracle_1d(double k, double a, double b, const std::function<double(double)>& f, int n) {
  if (!(0.0 < a && a < b)) throw std::invalid_argument("oracle_1d requires 0 < a < b");
  if (n < 64) throw std::invalid_argument("oracle_1d requires n >= 64");
  if (!(k >= 0.0)) throw std::invalid_argument("oracle_1d requires k >= 0");
  const Vec coarse = oracle_1d_level(k, a, b, f, n);
  const Vec fine = oracle_1d_level(k, a, b, f, 2 * n);
  Vec out(static_cast<std::size_t>(n + 1));
  out.front() = f(a);
  out.back() = f(b);
  for (int i = 1; i < n; ++i) {
    const double uc = coarse[static_cast<std::size_t>(i - 1)];
    const double uf = fine[static_cast<std::size_t>(2 * i - 1)];
    out[static_cast<std::size_t>(i)] = (4.0 * uf - uc) / 3.0;
  }
  return out;
}

double HarmonicMeasure::pair(const ScalarField& f) const {
  const GridDomain& g = *grid;
  const std::size_t d = static_cast<std::size_t>(g.dimension());
  Vec x(d), sigma(d);
  double acc = 0.0;
  const auto& ring = g.ring_nodes();
  for (std::size_t r = 0; r < ring.size(); ++r) {
    if (boundary_mass[r] == 0.0) continue;
    g.node_coords(ring[r], x);
    acc += boundary_mass[r] * f(x);
  }
  const auto& interior = g.interior_nodes();
  for (const RootPart& part : parts) {
    for (std::size_t o = 0; o < interior.size(); ++o) {
      if (part.mass[o] == 0.0) continue;
      g.node_coords(interior[o], x);
      rs.reflect(part.root, x, sigma);
      acc += part.mass[o] * f(sigma);
    }
  }
  return acc;
}

HarmonicMeasure harmonic_measure(GridPtr grid, const RootSystem& rs,
                                 std::span<const double> x, const SolverOptions& opts) {
  const GridDomain& g = *grid;
  require_admissible(g, rs, opts);
  const std::size_t d = static_cast<std::size_t>(g.dimension());

  // snap to the nearest interior node
  const auto& interior = g.interior_nodes();
  std::size_t best = npos;
  double best_dist = std::numeric_limits<double>::infinity();
  Vec coords(d);
  for (std::size_t node : interior) {
    g.node_coords(node, coords);
    double s = 0.0;
    for (std::size_t i = 0; i < d; ++i) s += (coords[i] - x[i]) * (coords[i] - x[i]);
    if (s < best_dist) {
      best_dist = s;
      best = node;
    }
  }

  HarmonicMeasure m{grid, rs};
  m.node = best;
  m.point = g.node_coords(best);
  const double sw_x = rs.sqrt_weight(m.point);

  const DiscreteOperator op(grid, rs);
  const Vec v = green_row(op, best, opts.rel_tol);
  const Vec ring_weights = harmonic_measure_row_from_green(op, v);

  // boundary part: Schrodinger weights carried back through the weight ratio
  const auto& ring = g.ring_nodes();
  m.boundary_mass.resize(ring.size());
  for (std::size_t r = 0; r < ring.size(); ++r) {
    g.node_coords(ring[r], coords);
    m.boundary_mass[r] = ring_weights[r] * rs.sqrt_weight(coords) / sw_x;
    m.boundary_total += m.boundary_mass[r];
  }

  // one density per active root, mass located at the reflected node images
  Vec sigma(d);
  for (std::size_t r = 0; r < rs.root_count(); ++r) {
    if (rs.multiplicity(r) == 0.0) continue;
    HarmonicMeasure::RootPart part;
    part.root = r;
    part.mass.resize(interior.size());
    for (std::size_t o = 0; o < interior.size(); ++o) {
      g.node_coords(interior[o], coords);
      rs.reflect(r, coords, sigma);
      const double s = dot(coords, rs.root(r));
      part.mass[o] = rs.sqrt_weight(sigma) / sw_x * rs.root_norm_sq(r) * rs.multiplicity(r) /
                     (s * s) * v[o];
      m.parts_total += part.mass[o];
    }
    m.parts.push_back(std::move(part));
  }
  m.total = m.boundary_total + m.parts_total;
  return m;
}

double sup_difference_on_common_nodes(const SolutionField& coarse,
                                      const SolutionField& fine) {
  const GridDomain& gc = *coarse.grid;
  const GridDomain& gf = *fine.grid;
  const std::size_t d = static_cast<std::size_t>(gc.dimension());
  Vec x(d);
  double sup = 0.0;
  for (std::size_t node : gc.interior_nodes()) {
    gc.node_coords(node, x);
    const std::size_t fnode = gf.find_node(x);
    if (fnode == npos || gf.node_class(fnode) == NodeClass::exterior) continue;
    sup = std::max(sup, std::fabs(coarse.values[node] - fine.values[fnode]));
  }
  return sup;
}

double sup_interior_error(const SolutionField& s,
                          const std::function<double(std::span<const double>)>& exact) {
  const GridDomain& g = *s.grid;
  Vec x(static_cast<std::size_t>(g.dimension()));
  double sup = 0.0;
  for (std::size_t node : g.interior_nodes()) {
    g.node_coords(node, x);
    sup = std::max(sup, std::fabs(s.values[node] - exact(x)));
  }
  return sup;
}

std::vector<double> convergence_orders(std::span<const double> errors) {
  std::vector<double> orders;
  for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
    if (errors[i] > 0.0 && errors[i + 1] > 0.0)
      orders.push_back(std::log2(errors[i] / errors[i + 1]));
    else
      orders.push_back(std::numeric_limits<double>::infinity());
  }
  return orders;
}

ProbeReport smoothness_probe(const DomainSpec& domain, const RootSystem& rs,
                             const BoundaryData& f_smooth, const BoundaryData& f_kinked,
                             std::span<const double> h_ladder, const SolverOptions& opts) {
  if (h_ladder.size() < 2)
    throw std::invalid_argument("smoothness probe requires at least two grid levels");

  const GridPtr coarse = discretize_shared(domain, h_ladder[0]);
  const std::size_t d = static_cast<std::size_t>(coarse->dimension());
  const double h0 = coarse->spacing();

  // coarse interior nodes whose coarse-spacing axis neighbors are interior
  std::vector<Vec> probe_points;
  {
    Vec x(d);
    for (std::size_t node : coarse->interior_nodes()) {
      bool ok = true;
      for (int axis = 0; axis < coarse->dimension() && ok; ++axis)
        for (int dir = -1; dir <= 1 && ok; dir += 2) {
          const std::size_t nb = coarse->neighbor(node, axis, dir);
          ok = nb != npos && coarse->node_class(nb) == NodeClass::interior;
        }
      if (ok) {
        coarse->node_coords(node, x);
        probe_points.push_back(x);
      }
    }
  }

  auto second_diffs = [&](const SolutionField& s) {
    const GridDomain& g = *s.grid;
    Vec out(probe_points.size());
    Vec shifted(d);
    for (std::size_t i = 0; i < probe_points.size(); ++i) {
      const Vec& x = probe_points[i];
      const double center = s.values[g.find_node(x)];
      double acc = 0.0;
      for (std::size_t axis = 0; axis < d; ++axis) {
        for (int dir = -1; dir <= 1; dir += 2) {
          shifted = x;
          shifted[axis] += dir * h0;
          acc += s.values[g.find_node(shifted)];
        }
        acc -= 2.0 * center;
      }
      out[i] = acc / (h0 * h0);
    }
    return out;
  };

  auto run = [&](const BoundaryData& f) {
    ProbeSeries series;
    std::vector<SolutionField> fields;
    std::vector<Vec> diffs;
    for (double h : h_ladder) {
      series.h.push_back(h);
      DunklSolution sol = solve_reduction(discretize_shared(domain, h), rs, f, opts);
      diffs.push_back(second_diffs(sol.field));
      fields.push_back(std::move(sol.field));
    }
    for (std::size_t l = 0; l + 1 < fields.size(); ++l) {
      series.value_change.push_back(
          sup_difference_on_common_nodes(fields[l], fields[l + 1]));
      double sup = 0.0;
      for (std::size_t i = 0; i < diffs[l].size(); ++i)
        sup = std::max(sup, std::fabs(diffs[l][i] - diffs[l + 1][i]));
      series.second_diff_change.push_back(sup);
    }
    series.value_order = convergence_orders(series.value_change);
    series.second_diff_order = convergence_orders(series.second_diff_change);
    return series;
  };

  ProbeReport report;
  report.smooth = run(f_smooth);
  report.kinked = run(f_kinked);
  return report;
}

}  // namespace dunkl
