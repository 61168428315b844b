#include "dunkl/config.hpp"

#include <algorithm>
#include <fstream>
#include <memory>

#include <json.hpp>

#include "dunkl/expr.hpp"

namespace dunkl {

using nlohmann::json;

namespace {

Vec read_vec(const json& j, const std::string& key) {
  Vec v;
  for (const auto& e : j.at(key)) {
    if (!e.is_number()) throw ConfigError(key + " must be an array of numbers");
    v.push_back(e.get<double>());
  }
  return v;
}

}  // namespace

RunConfig RunConfig::from_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return from_json_text(text);
}

RunConfig RunConfig::from_json_text(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  RunConfig cfg;
  try {
    if (root.contains("seed")) cfg.seed = root.at("seed").get<std::uint64_t>();

    const json& rs = root.at("root_system");
    cfg.rs_name = rs.at("name").get<std::string>();
    cfg.multiplicities = read_vec(rs, "multiplicities");
    if (rs.contains("dimension")) cfg.dimension = rs.at("dimension").get<int>();
    if (rs.contains("roots")) {
      for (const auto& r : rs.at("roots")) {
        Vec root_vec;
        for (const auto& c : r) root_vec.push_back(c.get<double>());
        cfg.custom_roots.push_back(std::move(root_vec));
      }
    }

    const json& dom = root.at("domain");
    cfg.domain_kind = dom.at("type").get<std::string>();
    if (cfg.domain_kind == "box") {
      cfg.lower = read_vec(dom, "lower");
      cfg.upper = read_vec(dom, "upper");
    } else if (cfg.domain_kind == "ball") {
      cfg.center = read_vec(dom, "center");
      cfg.radius = dom.at("radius").get<double>();
    } else {
      throw ConfigError("domain.type must be 'box' or 'ball'");
    }

    const json& grid = root.at("grid");
    if (grid.contains("h")) cfg.h = grid.at("h").get<double>();
    if (grid.contains("cells")) cfg.cells = grid.at("cells").get<int>();
    if (cfg.h <= 0.0 && cfg.cells <= 0)
      throw ConfigError("grid requires a positive 'h' or 'cells'");

    if (root.contains("boundary"))
      cfg.boundary_expression = root.at("boundary").at("expression").get<std::string>();
    if (root.contains("exact"))
      cfg.exact_expression = root.at("exact").at("expression").get<std::string>();

    if (root.contains("tolerances")) {
      const json& tol = root.at("tolerances");
      if (tol.contains("linear_residual"))
        cfg.linear_residual = tol.at("linear_residual").get<double>();
      if (tol.contains("delta")) cfg.delta = tol.at("delta").get<double>();
    }
    if (root.contains("method")) cfg.method = root.at("method").get<std::string>();
    if (root.contains("measure") && root.at("measure").contains("point"))
      cfg.measure_point = read_vec(root.at("measure"), "point");
    if (root.contains("levels")) cfg.levels = root.at("levels").get<int>();
    if (root.contains("out_dir")) cfg.out_dir = root.at("out_dir").get<std::string>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }

  if (cfg.method != "reduction" && cfg.method != "direct" && cfg.method != "both")
    throw ConfigError("method must be reduction, direct or both");
  if (cfg.levels < 1) throw ConfigError("levels must be positive");
  if (!(cfg.linear_residual > 0.0)) throw ConfigError("linear_residual must be positive");
  return cfg;
}

RootSystem RunConfig::make_root_system() const {
  try {
    if (rs_name == "custom") {
      if (dimension < 1) throw ConfigError("custom root system requires 'dimension'");
      return RootSystem(dimension, custom_roots, multiplicities);
    }
    return builtin_root_system(rs_name, multiplicities);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("root_system: ") + e.what());
  }
}

DomainSpec RunConfig::make_domain() const {
  try {
    if (domain_kind == "box") return DomainSpec::box(lower, upper);
    return DomainSpec::ball(center, radius);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("domain: ") + e.what());
  }
}

double RunConfig::grid_spacing() const {
  if (h > 0.0) return h;
  double shortest = std::numeric_limits<double>::infinity();
  if (domain_kind == "box") {
    for (std::size_t i = 0; i < lower.size(); ++i)
      shortest = std::min(shortest, upper[i] - lower[i]);
  } else {
    shortest = 2.0 * radius;
  }
  return shortest / static_cast<double>(cells);
}

namespace {

ScalarField field_from_expression(const std::string& text, int d,
                                  std::optional<DomainSpec> excluded) {
  auto parsed = std::make_shared<expr::Expression>(expr::Expression::parse(text, d));
  ScalarField::Eval eval = [parsed](std::span<const double> x) {
    return parsed->evaluate(x);
  };
  if (excluded) return ScalarField::on_complement(std::move(*excluded), std::move(eval));
  return ScalarField::everywhere(d, std::move(eval));
}

}  // namespace

BoundaryData RunConfig::make_boundary_data() const {
  if (boundary_expression.empty()) throw ConfigError("missing boundary.expression");
  const DomainSpec domain = make_domain();
  const int d = domain.dimension();
  try {
    return field_from_expression(boundary_expression, d, domain);
  } catch (const expr::ParseError& e) {
    throw ConfigError(std::string("boundary.expression: ") + e.what());
  }
}

ScalarField RunConfig::make_exact_field() const {
  if (!exact_expression) throw ConfigError("missing exact.expression");
  const int d = make_domain().dimension();
  try {
    return field_from_expression(*exact_expression, d, std::nullopt);
  } catch (const expr::ParseError& e) {
    throw ConfigError(std::string("exact.expression: ") + e.what());
  }
}

}  // namespace dunkl
