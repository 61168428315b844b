#include "dunkl/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

namespace dunkl {

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw Error("cannot open output file " + path.string());
  out << text;
  if (!out) throw Error("failed writing " + path.string());
}

namespace {

std::string csv_header(int d) {
  std::string header;
  for (int i = 1; i <= d; ++i) header += "x" + std::to_string(i) + ",";
  header += "value\n";
  return header;
}

void append_point(std::string& out, std::span<const double> x) {
  for (double c : x) {
    out += format_double(c);
    out += ',';
  }
}

}  // namespace

void write_solution_csv(const std::filesystem::path& path, const SolutionField& field) {
  const GridDomain& g = *field.grid;
  const std::size_t d = static_cast<std::size_t>(g.dimension());
  std::string out = csv_header(g.dimension());
  Vec x(d);
  for (std::size_t node = 0; node < g.node_count(); ++node) {
    if (g.node_class(node) == NodeClass::exterior) continue;
    g.node_coords(node, x);
    append_point(out, x);
    out += format_double(field.values[node]);
    out += '\n';
  }
  write_text_file(path, out);
}

void write_measure_boundary_csv(const std::filesystem::path& path,
                                const HarmonicMeasure& m) {
  const GridDomain& g = *m.grid;
  const std::size_t d = static_cast<std::size_t>(g.dimension());
  std::string out;
  for (int i = 1; i <= g.dimension(); ++i) out += "x" + std::to_string(i) + ",";
  out += "mass\n";
  Vec x(d);
  const auto& ring = g.ring_nodes();
  for (std::size_t r = 0; r < ring.size(); ++r) {
    g.node_coords(ring[r], x);
    append_point(out, x);
    out += format_double(m.boundary_mass[r]);
    out += '\n';
  }
  write_text_file(path, out);
}

void write_measure_density_csv(const std::filesystem::path& path, const HarmonicMeasure& m,
                               std::size_t part_index) {
  const GridDomain& g = *m.grid;
  const std::size_t d = static_cast<std::size_t>(g.dimension());
  const auto& part = m.parts.at(part_index);
  const double cell = std::pow(g.spacing(), g.dimension());
  std::string out;
  for (int i = 1; i <= g.dimension(); ++i) out += "x" + std::to_string(i) + ",";
  out += "density,mass\n";
  Vec x(d), sigma(d);
  const auto& interior = g.interior_nodes();
  for (std::size_t o = 0; o < interior.size(); ++o) {
    g.node_coords(interior[o], x);
    m.rs.reflect(part.root, x, sigma);
    append_point(out, sigma);
    out += format_double(part.mass[o] / cell);
    out += ',';
    out += format_double(part.mass[o]);
    out += '\n';
  }
  write_text_file(path, out);
}

}  // namespace dunkl
