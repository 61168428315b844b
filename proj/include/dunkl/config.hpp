#ifndef DUNKL_CONFIG_HPP
#define DUNKL_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "dunkl/fields.hpp"
#include "dunkl/geometry.hpp"
#include "dunkl/root_system.hpp"

namespace dunkl {

// One JSON config file per run; scalar fields may be overridden from the
// command line. See README for the schema.
struct RunConfig {
  std::uint64_t seed = 1;

  std::string rs_name;
  std::vector<double> multiplicities;
  // custom root systems: explicit positive roots
  std::vector<Vec> custom_roots;
  int dimension = 0;

  std::string domain_kind;  // "box" | "ball"
  Vec lower, upper, center;
  double radius = 0.0;

  double h = 0.0;        // grid spacing, or
  int cells = 0;         // cells along the shortest side

  std::string boundary_expression;
  std::optional<std::string> exact_expression;  // known solution for ladders

  double linear_residual = 1e-12;
  double delta = 0.0;  // admissibility margin; 0 selects 2h

  std::string method = "reduction";  // reduction | direct | both
  Vec measure_point;
  int levels = 3;
  std::string out_dir = "out";

  static RunConfig from_json_file(const std::filesystem::path& path);
  static RunConfig from_json_text(const std::string& text);

  RootSystem make_root_system() const;
  DomainSpec make_domain() const;
  double grid_spacing() const;  // from h or cells
  BoundaryData make_boundary_data() const;
  ScalarField make_exact_field() const;  // requires exact_expression
};

}  // namespace dunkl

#endif
