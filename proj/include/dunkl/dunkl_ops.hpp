#ifndef DUNKL_DUNKL_OPS_HPP
#define DUNKL_DUNKL_OPS_HPP

#include <span>

#include "dunkl/fields.hpp"
#include "dunkl/root_system.hpp"

namespace dunkl {

// Delta_k f(x): the Laplacian plus, for every active root, the first-order
// drift 2 k <grad f, a>/<a,x> and the reflection difference
// -k |a|^2 (f(x) - f(sigma_a x)) / <a,x>^2.
// Uses analytic derivatives when the field carries them, else central
// differences with the given step (step <= 0 selects the default step).
double apply_dunkl_laplacian(const RootSystem& rs, const ScalarField& f,
                             std::span<const double> x, double step = 0.0);

// N f(x) = sum over active roots of |a|^2 k / <x,a>^2 * f(sigma_a x).
double apply_n(const RootSystem& rs, const ScalarField& f, std::span<const double> x);

// Residual of  sqrt(w) Delta_k phi = (Delta(phi sqrt(w)) - q phi sqrt(w)) + sqrt(w) N phi,
// with the product Laplacian evaluated by central differences of spacing step.
double conjugation_residual(const RootSystem& rs, const ScalarField& phi,
                            std::span<const double> x, double step);

// Analytic derivatives of sqrt(w_k):
//   grad sqrt(w)(x) = sqrt(w)(x) * sum k(a) a / <x,a>
//   lap  sqrt(w)(x) = sqrt(w)(x) * sum |a|^2 (k^2(a) - k(a)) / <x,a>^2
void sqrt_weight_gradient(const RootSystem& rs, std::span<const double> x,
                          std::span<double> out);
double sqrt_weight_laplacian(const RootSystem& rs, std::span<const double> x);

// Max-abs difference between the central-difference derivative of sqrt(w_k)
// and the closed form above; O(step^2) for smooth weights off the hyperplanes.
double sqrt_weight_gradient_residual(const RootSystem& rs, std::span<const double> x,
                                     double step);
double sqrt_weight_laplacian_residual(const RootSystem& rs, std::span<const double> x,
                                      double step);

// B(x) = sum k(a) |a| / |<x,a>|, an upper bound for |grad log sqrt(w)|.
// The p-th derivatives of sqrt(w) are bounded by sqrt(w) O((1+B)^p), which is
// the natural scale when comparing finite differences against the identities.
double sqrt_weight_log_gradient_bound(const RootSystem& rs, std::span<const double> x);

}  // namespace dunkl

#endif
