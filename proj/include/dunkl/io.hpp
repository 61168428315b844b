#ifndef DUNKL_IO_HPP
#define DUNKL_IO_HPP

#include <filesystem>
#include <span>
#include <string>

#include "dunkl/dirichlet.hpp"
#include "dunkl/elliptic.hpp"

namespace dunkl {

// Shortest round-trip decimal form of a double, locale-independent.
std::string format_double(double v);

// "x1,...,xd,value" rows over interior and ring nodes, full double precision.
void write_solution_csv(const std::filesystem::path& path, const SolutionField& field);

// ring atoms: coordinates and mass
void write_measure_boundary_csv(const std::filesystem::path& path, const HarmonicMeasure& m);

// one file per active root: reflected location, density (mass / h^d) and mass
void write_measure_density_csv(const std::filesystem::path& path, const HarmonicMeasure& m,
                               std::size_t part_index);

void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace dunkl

#endif
