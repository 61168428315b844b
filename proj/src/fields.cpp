#include "dunkl/fields.hpp"

#include <algorithm>
#include <cmath>

namespace dunkl {

ScalarField ScalarField::everywhere(int dimension, Eval f) {
  if (dimension < 1) throw std::invalid_argument("field dimension must be positive");
  if (!f) throw std::invalid_argument("field requires an evaluator");
  ScalarField s;
  s.dimension_ = dimension;
  s.eval_ = std::move(f);
  return s;
}

ScalarField ScalarField::on_complement(DomainSpec domain, Eval f) {
  ScalarField s = everywhere(domain.dimension(), std::move(f));
  s.excluded_ = std::move(domain);
  return s;
}

ScalarField ScalarField::constant(int dimension, double value) {
  return everywhere(dimension, [value](std::span<const double>) { return value; });
}

ScalarField& ScalarField::with_gradient(GradEval g) {
  grad_ = std::move(g);
  return *this;
}

ScalarField& ScalarField::with_laplacian(LapEval l) {
  lap_ = std::move(l);
  return *this;
}

bool ScalarField::evaluable_at(std::span<const double> x) const {
  return !excluded_ || !excluded_->contains(x);
}

double ScalarField::operator()(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dimension_)
    throw std::invalid_argument("field point dimension mismatch");
  if (!evaluable_at(x))
    throw FieldDomainError("field evaluated inside the excluded open domain");
  return eval_(x);
}

double ScalarField::default_step(std::span<const double> x) {
  return 1e-4 * std::max(1.0, norm(x));
}

void ScalarField::gradient(std::span<const double> x, std::span<double> out,
                           double step) const {
  if (grad_) {
    if (!evaluable_at(x))
      throw FieldDomainError("field evaluated inside the excluded open domain");
    grad_(x, out);
    return;
  }
  Vec p(x.begin(), x.end());
  for (std::size_t i = 0; i < x.size(); ++i) {
    p[i] = x[i] + step;
    const double fp = (*this)(p);
    p[i] = x[i] - step;
    const double fm = (*this)(p);
    p[i] = x[i];
    out[i] = (fp - fm) / (2.0 * step);
  }
}

double ScalarField::laplacian(std::span<const double> x, double step) const {
  if (lap_) {
    if (!evaluable_at(x))
      throw FieldDomainError("field evaluated inside the excluded open domain");
    return lap_(x);
  }
  Vec p(x.begin(), x.end());
  const double fc = (*this)(x);
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    p[i] = x[i] + step;
    const double fp = (*this)(p);
    p[i] = x[i] - step;
    const double fm = (*this)(p);
    p[i] = x[i];
    acc += (fp - 2.0 * fc + fm) / (step * step);
  }
  return acc;
}

}  // namespace dunkl
