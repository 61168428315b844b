#include "dunkl/dunkl_ops.hpp"

#include <cmath>

namespace dunkl {

namespace {

double resolve_step(std::span<const double> x, double step) {
  return step > 0.0 ? step : ScalarField::default_step(x);
}

}  // namespace

double apply_dunkl_laplacian(const RootSystem& rs, const ScalarField& f,
                             std::span<const double> x, double step) {
  const double h = resolve_step(x, step);
  const std::size_t d = x.size();
  double acc = f.laplacian(x, h);
  if (!rs.has_active_roots()) return acc;

  Vec grad(d), sigma(d);
  f.gradient(x, grad, h);
  const double fx = f(x);
  for (std::size_t i = 0; i < rs.root_count(); ++i) {
    const double k = rs.multiplicity(i);
    if (k == 0.0) continue;
    const double s = dot(x, rs.root(i));
    if (s == 0.0)
      throw HyperplaneError("Dunkl Laplacian evaluated on a reflection hyperplane");
    rs.reflect(i, x, sigma);
    const double fs = f(sigma);
    acc += 2.0 * k * (dot(grad, rs.root(i)) / s -
                      0.5 * rs.root_norm_sq(i) * (fx - fs) / (s * s));
  }
  return acc;
}

double apply_n(const RootSystem& rs, const ScalarField& f, std::span<const double> x) {
  double acc = 0.0;
  Vec sigma(x.size());
  for (std::size_t i = 0; i < rs.root_count(); ++i) {
    const double k = rs.multiplicity(i);
    if (k == 0.0) continue;
    const double s = dot(x, rs.root(i));
    if (s == 0.0) throw HyperplaneError("N evaluated on a reflection hyperplane");
    rs.reflect(i, x, sigma);
    acc += rs.root_norm_sq(i) * k / (s * s) * f(sigma);
  }
  return acc;
}

double conjugation_residual(const RootSystem& rs, const ScalarField& phi,
                            std::span<const double> x, double step) {
  const double h = resolve_step(x, step);
  const std::size_t d = x.size();
  const double sw = rs.sqrt_weight(x);
  const double lhs = sw * apply_dunkl_laplacian(rs, phi, x, h);

  // central-difference Laplacian of the product field phi * sqrt(w)
  Vec p(x.begin(), x.end());
  const double center = phi(x) * sw;
  double product_lap = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    p[i] = x[i] + h;
    const double fp = phi(p) * rs.sqrt_weight(p);
    p[i] = x[i] - h;
    const double fm = phi(p) * rs.sqrt_weight(p);
    p[i] = x[i];
    product_lap += (fp - 2.0 * center + fm) / (h * h);
  }

  const double rhs = product_lap - rs.potential(x) * center + sw * apply_n(rs, phi, x);
  return lhs - rhs;
}

void sqrt_weight_gradient(const RootSystem& rs, std::span<const double> x,
                          std::span<double> out) {
  const double sw = rs.sqrt_weight(x);
  for (std::size_t j = 0; j < x.size(); ++j) out[j] = 0.0;
  for (std::size_t i = 0; i < rs.root_count(); ++i) {
    const double k = rs.multiplicity(i);
    if (k == 0.0) continue;
    const double s = dot(x, rs.root(i));
    if (s == 0.0)
      throw HyperplaneError("sqrt-weight gradient evaluated on a reflection hyperplane");
    const double c = sw * k / s;
    for (std::size_t j = 0; j < x.size(); ++j) out[j] += c * rs.root(i)[j];
  }
}

double sqrt_weight_laplacian(const RootSystem& rs, std::span<const double> x) {
  const double sw = rs.sqrt_weight(x);
  double acc = 0.0;
  for (std::size_t i = 0; i < rs.root_count(); ++i) {
    const double k = rs.multiplicity(i);
    if (k == 0.0) continue;
    const double s = dot(x, rs.root(i));
    if (s == 0.0)
      throw HyperplaneError("sqrt-weight Laplacian evaluated on a reflection hyperplane");
    acc += rs.root_norm_sq(i) * (k * k - k) / (s * s);
  }
  return sw * acc;
}

double sqrt_weight_gradient_residual(const RootSystem& rs, std::span<const double> x,
                                     double step) {
  const std::size_t d = x.size();
  Vec analytic(d), p(x.begin(), x.end());
  sqrt_weight_gradient(rs, x, analytic);
  double worst = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    p[i] = x[i] + step;
    const double fp = rs.sqrt_weight(p);
    p[i] = x[i] - step;
    const double fm = rs.sqrt_weight(p);
    p[i] = x[i];
    worst = std::max(worst, std::fabs((fp - fm) / (2.0 * step) - analytic[i]));
  }
  return worst;
}

double sqrt_weight_log_gradient_bound(const RootSystem& rs, std::span<const double> x) {
  double b = 0.0;
  for (std::size_t i = 0; i < rs.root_count(); ++i) {
    const double k = rs.multiplicity(i);
    if (k == 0.0) continue;
    const double s = dot(x, rs.root(i));
    if (s == 0.0)
      throw HyperplaneError("log-gradient bound evaluated on a reflection hyperplane");
    b += k * std::sqrt(rs.root_norm_sq(i)) / std::fabs(s);
  }
  return b;
}

double sqrt_weight_laplacian_residual(const RootSystem& rs, std::span<const double> x,
                                      double step) {
  const std::size_t d = x.size();
  Vec p(x.begin(), x.end());
  const double center = rs.sqrt_weight(x);
  double fd = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    p[i] = x[i] + step;
    const double fp = rs.sqrt_weight(p);
    p[i] = x[i] - step;
    const double fm = rs.sqrt_weight(p);
    p[i] = x[i];
    fd += (fp - 2.0 * center + fm) / (step * step);
  }
  return std::fabs(fd - sqrt_weight_laplacian(rs, x));
}

}  // namespace dunkl
