#include "dunkl/commands.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <json.hpp>

#include "dunkl/dirichlet.hpp"
#include "dunkl/dunkl_ops.hpp"
#include "dunkl/io.hpp"

namespace dunkl {

using nlohmann::json;

namespace {

int map_exception(std::ostream& err) {
  try {
    throw;
  } catch (const AdmissibilityError& e) {
    err << "admissibility: " << e.what() << "\n";
    return exit_admissibility;
  } catch (const SolverError& e) {
    err << "solver: " << e.what() << "\n";
    return exit_solver;
  } catch (const ConfigError& e) {
    err << "config: " << e.what() << "\n";
    return exit_config;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_config;
  }
}

std::filesystem::path write_summary(const RunConfig& cfg, const std::string& name,
                                    const json& summary) {
  const std::filesystem::path path = std::filesystem::path(cfg.out_dir) / name;
  write_text_file(path, summary.dump(2) + "\n");
  return path;
}

json admissibility_json(const AdmissibilityReport& r) {
  json j;
  j["pass"] = r.pass;
  j["sign_vector_constant"] = r.sign_vector_constant;
  j["distance_ok"] = r.distance_ok;
  j["reflections_disjoint"] = r.reflections_disjoint;
  j["min_hyperplane_distance"] = r.min_hyperplane_distance;
  j["delta"] = r.delta;
  j["detail"] = r.detail;
  return j;
}

double resolved_delta(const RunConfig& cfg, double h) {
  return cfg.delta > 0.0 ? cfg.delta : 2.0 * h;
}

SolverOptions solver_options(const RunConfig& cfg, double h) {
  SolverOptions opts;
  opts.rel_tol = cfg.linear_residual;
  opts.delta = resolved_delta(cfg, h);
  return opts;
}

}  // namespace

int cmd_validate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    const RootSystem rs = cfg.make_root_system();
    const DomainSpec domain = cfg.make_domain();
    const double h = cfg.grid_spacing();
    const GridDomain grid = discretize(domain, h);
    const AdmissibilityReport report =
        check_admissible(domain, rs, resolved_delta(cfg, h), &grid);

    err << (report.pass ? "admissible" : "NOT admissible") << ": " << report.detail << "\n";
    err << "  min hyperplane distance: " << report.min_hyperplane_distance
        << " (delta " << report.delta << ")\n";
    err << "  interior nodes: " << grid.interior_nodes().size()
        << ", ring nodes: " << grid.ring_nodes().size() << "\n";

    json summary;
    summary["command"] = "validate";
    summary["admissibility"] = admissibility_json(report);
    summary["h"] = h;
    summary["interior_nodes"] = grid.interior_nodes().size();
    summary["ring_nodes"] = grid.ring_nodes().size();
    out << write_summary(cfg, "validate_summary.json", summary).string() << "\n";
    return report.pass ? exit_ok : exit_admissibility;
  } catch (...) {
    return map_exception(err);
  }
}

int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    const RootSystem rs = cfg.make_root_system();
    const GridPtr grid = discretize_shared(cfg.make_domain(), cfg.grid_spacing());
    const BoundaryData f = cfg.make_boundary_data();
    const SolverOptions opts = solver_options(cfg, grid->spacing());

    json summary;
    summary["command"] = "solve";
    summary["h"] = grid->spacing();
    summary["interior_nodes"] = grid->interior_nodes().size();
    summary["ring_nodes"] = grid->ring_nodes().size();
    summary["method"] = cfg.method;

    const std::filesystem::path dir(cfg.out_dir);
    DunklSolution reduction, direct;
    const bool run_reduction = cfg.method == "reduction" || cfg.method == "both";
    const bool run_direct = cfg.method == "direct" || cfg.method == "both";
    if (run_reduction) {
      reduction = solve_reduction(grid, rs, f, opts);
      write_solution_csv(dir / "solution_reduction.csv", reduction.field);
      summary["reduction"] = {{"residual", reduction.field.relative_residual},
                              {"iterations", reduction.field.iterations},
                              {"csv", (dir / "solution_reduction.csv").string()}};
      summary["admissibility"] = admissibility_json(reduction.admissibility);
    }
    if (run_direct) {
      direct = solve_direct(grid, rs, f, opts);
      write_solution_csv(dir / "solution_direct.csv", direct.field);
      summary["direct"] = {{"residual", direct.field.relative_residual},
                           {"iterations", direct.field.iterations},
                           {"csv", (dir / "solution_direct.csv").string()}};
      summary["admissibility"] = admissibility_json(direct.admissibility);
    }
    if (run_reduction && run_direct) {
      double sup = 0.0;
      for (std::size_t node : grid->interior_nodes())
        sup = std::max(sup,
                       std::fabs(reduction.field.values[node] - direct.field.values[node]));
      summary["cross_max_difference"] = sup;
      err << "cross-solver max difference: " << sup << "\n";
    }

    out << write_summary(cfg, "solve_summary.json", summary).string() << "\n";
    return exit_ok;
  } catch (...) {
    return map_exception(err);
  }
}

int cmd_measure(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    const RootSystem rs = cfg.make_root_system();
    const DomainSpec domain = cfg.make_domain();
    const GridPtr grid = discretize_shared(domain, cfg.grid_spacing());
    const SolverOptions opts = solver_options(cfg, grid->spacing());

    Vec point = cfg.measure_point;
    if (point.empty()) {
      point.assign(static_cast<std::size_t>(domain.dimension()), 0.0);
      for (int i = 0; i < domain.dimension(); ++i)
        point[static_cast<std::size_t>(i)] =
            0.5 * (domain.lower()[static_cast<std::size_t>(i)] +
                   domain.upper()[static_cast<std::size_t>(i)]);
    }
    const HarmonicMeasure m = harmonic_measure(grid, rs, point, opts);

    const std::filesystem::path dir(cfg.out_dir);
    write_measure_boundary_csv(dir / "measure_boundary.csv", m);
    json density_files = json::array();
    for (std::size_t p = 0; p < m.parts.size(); ++p) {
      const std::string name = "measure_density_root" + std::to_string(m.parts[p].root) +
                               ".csv";
      write_measure_density_csv(dir / name, m, p);
      density_files.push_back((dir / name).string());
    }

    json summary;
    summary["command"] = "measure";
    summary["h"] = grid->spacing();
    summary["point"] = m.point;
    summary["boundary_mass"] = m.boundary_total;
    summary["reflected_mass"] = m.parts_total;
    summary["total_mass"] = m.total;
    summary["mass_error"] = std::fabs(m.total - 1.0);
    summary["boundary_csv"] = (dir / "measure_boundary.csv").string();
    summary["density_csv"] = density_files;

    if (!cfg.boundary_expression.empty()) {
      const BoundaryData f = cfg.make_boundary_data();
      const double paired = m.pair(f);
      const DunklSolution red = solve_reduction(grid, rs, f, opts);
      const DunklSolution dir_sol = solve_direct(grid, rs, f, opts);
      const double at_node_red = red.field.values[m.node];
      const double at_node_dir = dir_sol.field.values[m.node];
      const double scale = std::max(1.0, std::fabs(at_node_red));
      summary["pairing"] = paired;
      summary["solve_reduction_value"] = at_node_red;
      summary["pairing_rel_error"] = std::fabs(paired - at_node_red) / scale;
      // residual of the measure decomposition against the independent
      // discretization of the nonlocal operator
      summary["decomposition_residual"] = std::fabs(paired - at_node_dir);
      err << "total mass " << m.total << ", pairing " << paired << "\n";
    } else {
      err << "total mass " << m.total << "\n";
    }

    out << write_summary(cfg, "measure_summary.json", summary).string() << "\n";
    return exit_ok;
  } catch (...) {
    return map_exception(err);
  }
}

int cmd_convergence(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    const RootSystem rs = cfg.make_root_system();
    const DomainSpec domain = cfg.make_domain();
    const BoundaryData f = cfg.make_boundary_data();
    const double h0 = cfg.grid_spacing();
    const bool use_direct = cfg.method == "direct";

    std::vector<double> hs;
    std::vector<SolutionField> fields;
    for (int level = 0; level < cfg.levels; ++level) {
      const double h = h0 / static_cast<double>(1 << level);
      const GridPtr grid = discretize_shared(domain, h);
      const SolverOptions opts = solver_options(cfg, h);
      DunklSolution sol = use_direct ? solve_direct(grid, rs, f, opts)
                                     : solve_reduction(grid, rs, f, opts);
      hs.push_back(h);
      fields.push_back(std::move(sol.field));
    }

    std::vector<double> errors;
    std::string error_kind;
    if (cfg.exact_expression) {
      const ScalarField exact = cfg.make_exact_field();
      for (const SolutionField& s : fields)
        errors.push_back(
            sup_interior_error(s, [&](std::span<const double> x) { return exact(x); }));
      error_kind = "max_error_vs_exact";
    } else {
      for (std::size_t l = 0; l + 1 < fields.size(); ++l)
        errors.push_back(sup_difference_on_common_nodes(fields[l], fields[l + 1]));
      error_kind = "max_difference_between_levels";
    }
    const std::vector<double> orders = convergence_orders(errors);

    std::string csv = "h,error,order\n";
    for (std::size_t i = 0; i < errors.size(); ++i) {
      csv += format_double(hs[i]) + "," + format_double(errors[i]) + ",";
      csv += i < orders.size() ? format_double(orders[i]) : std::string("");
      csv += '\n';
    }
    const std::filesystem::path dir(cfg.out_dir);
    write_text_file(dir / "convergence.csv", csv);

    json summary;
    summary["command"] = "convergence";
    summary["method"] = use_direct ? "direct" : "reduction";
    summary["levels"] = cfg.levels;
    summary["error_kind"] = error_kind;
    summary["h"] = hs;
    summary["errors"] = errors;
    summary["orders"] = orders;
    summary["csv"] = (dir / "convergence.csv").string();
    for (std::size_t i = 0; i < errors.size(); ++i) {
      err << "h=" << hs[i] << "  error=" << errors[i];
      if (i < orders.size()) err << "  order=" << orders[i];
      err << "\n";
    }

    out << write_summary(cfg, "convergence_summary.json", summary).string() << "\n";
    return exit_ok;
  } catch (...) {
    return map_exception(err);
  }
}

namespace {

// random point in [lo,hi]^2 at hyperplane distance >= min_dist
Vec point_away(Uniform& rng, const RootSystem& rs, double lo, double hi, double min_dist) {
  Vec x(static_cast<std::size_t>(rs.dimension()));
  for (int tries = 0; tries < 100000; ++tries) {
    for (double& c : x) c = rng.range(lo, hi);
    if (rs.hyperplane_distance(x) >= min_dist) return x;
  }
  throw Error("failed to sample a point away from the hyperplanes");
}

struct PolyField {
  ScalarField field;
  std::string name;
};

std::vector<PolyField> conjugation_test_fields() {
  std::vector<PolyField> out;
  out.push_back(
      {ScalarField::everywhere(2,
                               [](std::span<const double> x) {
                                 return x[0] * x[0] - x[1] + 0.5 * x[0] * x[1];
                               })
           .with_gradient([](std::span<const double> x, std::span<double> g) {
             g[0] = 2.0 * x[0] + 0.5 * x[1];
             g[1] = -1.0 + 0.5 * x[0];
           })
           .with_laplacian([](std::span<const double>) { return 2.0; }),
       "x1^2 - x2 + x1*x2/2"});
  out.push_back(
      {ScalarField::everywhere(2,
                               [](std::span<const double> x) {
                                 return 1.0 + x[1] * x[1] - 2.0 * x[0];
                               })
           .with_gradient([](std::span<const double> x, std::span<double> g) {
             g[0] = -2.0;
             g[1] = 2.0 * x[1];
           })
           .with_laplacian([](std::span<const double>) { return 2.0; }),
       "1 + x2^2 - 2*x1"});
  return out;
}

}  // namespace

IdentityBattery run_identity_battery(std::uint64_t seed) {
  IdentityBattery battery;
  Uniform rng(seed);
  const double step = 1e-3;

  const std::vector<std::string> names = {"A2", "B2", "I2(5)"};
  const std::vector<double> ks = {0.5, 1.0, 2.0};

  for (const std::string& name : names) {
    for (double k : ks) {
      const std::vector<double> mult = {k};
      const RootSystem rs = builtin_root_system(name, mult);

      IdentityCheck lemma;
      lemma.name = "dunkl_lemma " + name + " k=" + format_double(k);
      lemma.bound = 1e-10;
      for (int i = 0; i < 100; ++i) {
        const Vec x = point_away(rng, rs, -2.0, 2.0, 0.1);
        lemma.worst = std::max(lemma.worst, std::fabs(rs.dunkl_lemma_residual(x)));
      }
      lemma.pass = lemma.worst <= lemma.bound;
      battery.checks.push_back(lemma);

      IdentityCheck grad;
      grad.name = "grad_sqrt_weight " + name + " k=" + format_double(k);
      grad.bound = 1e-6;
      IdentityCheck lap;
      lap.name = "lap_sqrt_weight " + name + " k=" + format_double(k);
      lap.bound = 1e-6;
      for (int i = 0; i < 50; ++i) {
        const Vec x = point_away(rng, rs, -2.5, 2.5, 0.75);
        // truncation residuals normalized by the derivative scale of sqrt(w):
        // its p-th derivatives are bounded by sqrt(w) (1+B)^p
        const double sw = rs.sqrt_weight(x);
        const double b = sqrt_weight_log_gradient_bound(rs, x);
        const double gscale = std::max(1.0, sw * std::pow(1.0 + b, 3));
        grad.worst =
            std::max(grad.worst, sqrt_weight_gradient_residual(rs, x, step) / gscale);
        const double lscale = std::max(1.0, sw * std::pow(1.0 + b, 4));
        lap.worst =
            std::max(lap.worst, sqrt_weight_laplacian_residual(rs, x, step) / lscale);
      }
      grad.pass = grad.worst <= grad.bound;
      lap.pass = lap.worst <= lap.bound;
      battery.checks.push_back(grad);
      battery.checks.push_back(lap);
    }
  }

  {
    const std::vector<double> mult = {1.0, 1.0};
    const RootSystem b2 = builtin_root_system("B2", mult);
    for (const PolyField& poly : conjugation_test_fields()) {
      IdentityCheck conj;
      conj.name = "conjugation B2 phi=" + poly.name;
      conj.bound = 1e-6;
      Vec g(2);
      for (int i = 0; i < 50; ++i) {
        const Vec x = point_away(rng, b2, 0.5, 2.5, 0.5);
        poly.field.gradient(x, g, step);
        const double s = std::fabs(poly.field(x)) + std::fabs(g[0]) + std::fabs(g[1]) +
                         std::fabs(poly.field.laplacian(x, step));
        const double b = sqrt_weight_log_gradient_bound(b2, x);
        const double scale = std::max(1.0, s * b2.sqrt_weight(x) * std::pow(1.0 + b, 4));
        conj.worst = std::max(
            conj.worst, std::fabs(conjugation_residual(b2, poly.field, x, step)) / scale);
      }
      conj.pass = conj.worst <= conj.bound;
      battery.checks.push_back(conj);
    }
  }

  for (const IdentityCheck& c : battery.checks) battery.pass = battery.pass && c.pass;
  return battery;
}

int cmd_identities(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    const IdentityBattery battery = run_identity_battery(cfg.seed);
    json checks = json::array();
    for (const IdentityCheck& c : battery.checks) {
      err << (c.pass ? "pass" : "FAIL") << "  " << c.name << "  worst " << c.worst
          << "  bound " << c.bound << "\n";
      checks.push_back(
          {{"name", c.name}, {"worst", c.worst}, {"bound", c.bound}, {"pass", c.pass}});
    }
    json summary;
    summary["command"] = "identities";
    summary["seed"] = cfg.seed;
    summary["pass"] = battery.pass;
    summary["checks"] = checks;
    out << write_summary(cfg, "identities_summary.json", summary).string() << "\n";
    return battery.pass ? exit_ok : exit_admissibility;
  } catch (...) {
    return map_exception(err);
  }
}

}  // namespace dunkl
