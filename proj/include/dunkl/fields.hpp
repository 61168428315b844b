#ifndef DUNKL_FIELDS_HPP
#define DUNKL_FIELDS_HPP

#include <functional>
#include <optional>
#include <span>

#include "dunkl/common.hpp"
#include "dunkl/geometry.hpp"

namespace dunkl {

// A scalar field with a declared evaluable region. Evaluating outside the
// region throws FieldDomainError instead of returning garbage, so solver
// misconfigurations surface immediately. Optional analytic derivatives are
// used when present; otherwise central differences with an explicit step.
class ScalarField {
 public:
  using Eval = std::function<double(std::span<const double>)>;
  using GradEval = std::function<void(std::span<const double>, std::span<double>)>;
  using LapEval = std::function<double(std::span<const double>)>;

  static ScalarField everywhere(int dimension, Eval f);
  // declared on the complement of an open domain (boundary included)
  static ScalarField on_complement(DomainSpec domain, Eval f);
  static ScalarField constant(int dimension, double value);

  ScalarField& with_gradient(GradEval g);
  ScalarField& with_laplacian(LapEval l);

  int dimension() const { return dimension_; }
  bool evaluable_at(std::span<const double> x) const;
  double operator()(std::span<const double> x) const;

  bool has_analytic_gradient() const { return static_cast<bool>(grad_); }
  bool has_analytic_laplacian() const { return static_cast<bool>(lap_); }

  // analytic when available, else second-order central differences
  void gradient(std::span<const double> x, std::span<double> out, double step) const;
  double laplacian(std::span<const double> x, double step) const;

  // default step 1e-4 * max(1, |x|): balances truncation and roundoff
  static double default_step(std::span<const double> x);

 private:
  ScalarField() = default;
  int dimension_ = 0;
  Eval eval_;
  GradEval grad_;
  LapEval lap_;
  std::optional<DomainSpec> excluded_;  // region = complement of this open set
};

// Boundary data for the Dirichlet problem: a field on the complement of D,
// evaluable at ring nodes and at exact reflected coordinates.
using BoundaryData = ScalarField;

}  // namespace dunkl

#endif
