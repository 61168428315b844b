#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "dunkl/common.hpp"
#include "dunkl/dunkl_ops.hpp"
#include "dunkl/fields.hpp"
#include "dunkl/root_system.hpp"

using namespace dunkl;

namespace {

Vec point_away(Uniform& rng, const RootSystem& rs, double lo, double hi, double min_dist) {
  Vec x(static_cast<std::size_t>(rs.dimension()));
  for (int tries = 0; tries < 100000; ++tries) {
    for (double& c : x) c = rng.range(lo, hi);
    if (rs.hyperplane_distance(x) >= min_dist) return x;
  }
  REQUIRE(false);
  return {};
}

ScalarField linear_field(Vec c, double offset = 0.0) {
  const int d = static_cast<int>(c.size());
  auto cc = std::make_shared<Vec>(std::move(c));
  return ScalarField::everywhere(d,
                                 [cc, offset](std::span<const double> x) {
                                   return offset + dot(*cc, x);
                                 })
      .with_gradient([cc](std::span<const double>, std::span<double> g) {
        for (std::size_t i = 0; i < cc->size(); ++i) g[i] = (*cc)[i];
      })
      .with_laplacian([](std::span<const double>) { return 0.0; });
}

ScalarField norm_sq_field(int d) {
  return ScalarField::everywhere(d, [](std::span<const double> x) { return norm_sq(x); })
      .with_gradient([](std::span<const double> x, std::span<double> g) {
        for (std::size_t i = 0; i < x.size(); ++i) g[i] = 2.0 * x[i];
      })
      .with_laplacian([](std::span<const double> x) { return 2.0 * static_cast<double>(x.size()); });
}

const std::vector<double> k11 = {1.0, 1.0};

}  // namespace

TEST_CASE("linear fields are annihilated") {
  Uniform rng(3);
  for (const char* name : {"A1xA1", "A2", "B2"}) {
    const RootSystem rs = builtin_root_system(name, std::vector<double>{1.0});
    const ScalarField f = linear_field({1.0, -2.0}, 0.7);
    for (int i = 0; i < 25; ++i) {
      const Vec x = point_away(rng, rs, -2.0, 2.0, 0.2);
      CHECK(std::fabs(apply_dunkl_laplacian(rs, f, x)) <= 1e-8);
    }
  }
}

TEST_CASE("squared norm gives 2d + 4 sum k") {
  const ScalarField f2 = norm_sq_field(2);
  const RootSystem a1a1 = builtin_root_system("A1xA1", k11);
  CHECK(apply_dunkl_laplacian(a1a1, f2, Vec{0.4, 1.1}) == doctest::Approx(12.0));

  const RootSystem b2 = builtin_root_system("B2", std::vector<double>{1.5, 0.5});
  // 2d + 4*(1.5 + 1.5 + 0.5 + 0.5) = 4 + 16
  CHECK(apply_dunkl_laplacian(b2, f2, Vec{1.2, 0.3}) == doctest::Approx(20.0));

  const ScalarField f3 = norm_sq_field(3);
  const RootSystem a13 = builtin_root_system("A1xA1xA1", std::vector<double>{1.0, 2.0, 3.0});
  CHECK(apply_dunkl_laplacian(a13, f3, Vec{0.5, 0.6, 0.7}) == doctest::Approx(6.0 + 24.0));
}

TEST_CASE("k = 0 degenerates to the classical Laplacian") {
  const RootSystem zero = builtin_root_system("B2", std::vector<double>{0.0, 0.0});
  const ScalarField f = ScalarField::everywhere(2, [](std::span<const double> x) {
                          return x[0] * x[0];
                        }).with_gradient([](std::span<const double> x, std::span<double> g) {
                            g[0] = 2.0 * x[0];
                            g[1] = 0.0;
                          }).with_laplacian([](std::span<const double>) { return 2.0; });
  CHECK(apply_dunkl_laplacian(zero, f, Vec{0.0, 0.0}) == doctest::Approx(2.0));
  CHECK(apply_dunkl_laplacian(zero, f, Vec{1.3, -0.4}) == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("apply_n hand values") {
  const RootSystem zero = builtin_root_system("A2", std::vector<double>{0.0});
  CHECK(apply_n(zero, ScalarField::constant(2, 3.0), Vec{0.5, 0.5}) == 0.0);

  const RootSystem a1a1 = builtin_root_system("A1xA1", k11);
  const ScalarField sum = linear_field({1.0, 1.0});
  // (1/4) f(-2,3) + (1/9) f(2,-3) = 1/4 - 1/9
  CHECK(apply_n(a1a1, sum, Vec{2.0, 3.0}) == doctest::Approx(5.0 / 36.0));

  // constant field: N 1 = sum |a|^2 k/<x,a>^2
  const RootSystem b2 = builtin_root_system("B2", k11);
  const Vec x{2.0, 0.6};
  double expected = 0.0;
  for (std::size_t r = 0; r < b2.root_count(); ++r) {
    const double s = dot(x, b2.root(r));
    expected += b2.root_norm_sq(r) * b2.multiplicity(r) / (s * s);
  }
  CHECK(apply_n(b2, ScalarField::constant(2, 1.0), x) == doctest::Approx(expected));
  CHECK_THROWS_AS(apply_n(b2, ScalarField::constant(2, 1.0), Vec{0.0, 0.6}),
                  HyperplaneError);
}

TEST_CASE("both operators are linear in the field") {
  Uniform rng(5);
  const RootSystem b2 = builtin_root_system("B2", std::vector<double>{0.5, 2.0});
  const ScalarField f1 = norm_sq_field(2);
  const ScalarField f2 = linear_field({0.3, 1.7}, -1.0);
  const ScalarField combo =
      ScalarField::everywhere(2,
                              [](std::span<const double> x) {
                                return 2.0 * norm_sq(x) + (0.3 * x[0] + 1.7 * x[1] - 1.0) * -3.0;
                              })
          .with_gradient([](std::span<const double> x, std::span<double> g) {
            g[0] = 4.0 * x[0] - 0.9;
            g[1] = 4.0 * x[1] - 5.1;
          })
          .with_laplacian([](std::span<const double>) { return 8.0; });
  for (int i = 0; i < 30; ++i) {
    const Vec x = point_away(rng, b2, -2.0, 2.0, 0.2);
    const double lhs = apply_dunkl_laplacian(b2, combo, x);
    const double rhs =
        2.0 * apply_dunkl_laplacian(b2, f1, x) - 3.0 * apply_dunkl_laplacian(b2, f2, x);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    CHECK(apply_n(b2, combo, x) ==
          doctest::Approx(2.0 * apply_n(b2, f1, x) - 3.0 * apply_n(b2, f2, x))
              .epsilon(1e-10));
  }
}

TEST_CASE("field region errors surface") {
  const DomainSpec box = DomainSpec::box({0.0, 0.0}, {1.0, 1.0});
  const ScalarField f =
      ScalarField::on_complement(box, [](std::span<const double>) { return 1.0; });
  const RootSystem a1a1 = builtin_root_system("A1xA1", k11);
  // sigma_{e1} maps (-0.5, 0.5) to (0.5, 0.5), inside the excluded box
  CHECK_THROWS_AS(apply_n(a1a1, f, Vec{-0.5, 0.5}), FieldDomainError);
  CHECK_THROWS_AS(apply_dunkl_laplacian(a1a1, f, Vec{-0.5, 0.5}), FieldDomainError);
  // all reflections stay outside: value is defined
  CHECK_NOTHROW(apply_n(a1a1, f, Vec{-0.5, -0.5}));
}

// The identity residuals are pure truncation, which scales with the third and
// fourth derivatives of sqrt(w); those are bounded by sqrt(w) (1+B)^p with
// B the log-gradient bound. Normalized this way, truncation sits near 1e-9
// while a wrong formula would register above 1e-4.
TEST_CASE("gradient identity for sqrt(w)") {
  Uniform rng(23);
  for (const char* name : {"A2", "B2", "I2(5)"}) {
    for (double k : {0.5, 1.0, 2.0}) {
      const RootSystem rs = builtin_root_system(name, std::vector<double>{k});
      double worst = 0.0;
      for (int i = 0; i < 50; ++i) {
        const Vec x = point_away(rng, rs, -2.5, 2.5, 0.75);
        const double b = sqrt_weight_log_gradient_bound(rs, x);
        const double scale = std::max(1.0, rs.sqrt_weight(x) * std::pow(1.0 + b, 3));
        worst = std::max(worst, sqrt_weight_gradient_residual(rs, x, 1e-3) / scale);
      }
      CAPTURE(name);
      CAPTURE(k);
      CHECK(worst <= 1e-6);
    }
  }
}

TEST_CASE("Laplacian identity for sqrt(w)") {
  Uniform rng(29);
  for (const char* name : {"A2", "B2", "I2(5)"}) {
    for (double k : {0.5, 1.0, 2.0}) {
      const RootSystem rs = builtin_root_system(name, std::vector<double>{k});
      double worst = 0.0;
      for (int i = 0; i < 50; ++i) {
        const Vec x = point_away(rng, rs, -2.5, 2.5, 0.75);
        const double b = sqrt_weight_log_gradient_bound(rs, x);
        const double scale = std::max(1.0, rs.sqrt_weight(x) * std::pow(1.0 + b, 4));
        worst = std::max(worst, sqrt_weight_laplacian_residual(rs, x, 1e-3) / scale);
      }
      CAPTURE(name);
      CAPTURE(k);
      CHECK(worst <= 1e-6);
    }
  }
}

TEST_CASE("identity residuals converge at second order") {
  Uniform rng(41);
  const RootSystem rs = builtin_root_system("B2", std::vector<double>{2.0, 0.5});
  for (int i = 0; i < 10; ++i) {
    const Vec x = point_away(rng, rs, -2.5, 2.5, 0.75);
    const double g1 = sqrt_weight_gradient_residual(rs, x, 1e-2);
    const double g2 = sqrt_weight_gradient_residual(rs, x, 5e-3);
    if (g1 > 1e-10) CHECK(g1 / g2 == doctest::Approx(4.0).epsilon(0.15));
    const double l1 = sqrt_weight_laplacian_residual(rs, x, 1e-2);
    const double l2 = sqrt_weight_laplacian_residual(rs, x, 5e-3);
    if (l1 > 1e-9) CHECK(l1 / l2 == doctest::Approx(4.0).epsilon(0.15));
  }
}

TEST_CASE("conjugation identity, k = 0") {
  const RootSystem zero = builtin_root_system("A1xA1", std::vector<double>{0.0, 0.0});
  const ScalarField f = norm_sq_field(2);
  CHECK(std::fabs(conjugation_residual(zero, f, Vec{0.3, 0.8}, 1e-3)) <= 1e-6);
}

TEST_CASE("conjugation identity, rank one") {
  const RootSystem r1 = builtin_root_system("A1", std::vector<double>{1.0});
  const ScalarField phi =
      ScalarField::everywhere(1, [](std::span<const double> x) { return x[0] * x[0]; })
          .with_gradient(
              [](std::span<const double> x, std::span<double> g) { g[0] = 2.0 * x[0]; })
          .with_laplacian([](std::span<const double>) { return 2.0; });
  CHECK(std::fabs(conjugation_residual(r1, phi, Vec{1.5}, 1e-3)) <= 1e-6);
}

TEST_CASE("conjugation identity, B2 battery") {
  Uniform rng(31);
  const RootSystem b2 = builtin_root_system("B2", k11);
  const ScalarField phi =
      ScalarField::everywhere(2,
                              [](std::span<const double> x) {
                                return x[0] * x[0] - x[1] + 0.5 * x[0] * x[1];
                              })
          .with_gradient([](std::span<const double> x, std::span<double> g) {
            g[0] = 2.0 * x[0] + 0.5 * x[1];
            g[1] = -1.0 + 0.5 * x[0];
          })
          .with_laplacian([](std::span<const double>) { return 2.0; });
  double worst = 0.0;
  Vec g(2);
  for (int i = 0; i < 50; ++i) {
    const Vec x = point_away(rng, b2, 0.5, 2.5, 0.5);
    // normalized by the derivative scale of the product phi sqrt(w)
    phi.gradient(x, g, 1e-3);
    const double s = std::fabs(phi(x)) + std::fabs(g[0]) + std::fabs(g[1]) +
                     std::fabs(phi.laplacian(x, 1e-3));
    const double b = sqrt_weight_log_gradient_bound(b2, x);
    const double scale = std::max(1.0, s * b2.sqrt_weight(x) * std::pow(1.0 + b, 4));
    worst = std::max(worst, std::fabs(conjugation_residual(b2, phi, x, 1e-3)) / scale);
  }
  CHECK(worst <= 1e-6);
}

TEST_CASE("finite-difference fallback agrees with analytic derivatives") {
  Uniform rng(37);
  const RootSystem b2 = builtin_root_system("B2", k11);
  const ScalarField analytic = norm_sq_field(2);
  const ScalarField plain =
      ScalarField::everywhere(2, [](std::span<const double> x) { return norm_sq(x); });
  for (int i = 0; i < 20; ++i) {
    const Vec x = point_away(rng, b2, -2.0, 2.0, 0.3);
    const double a = apply_dunkl_laplacian(b2, analytic, x);
    const double fd = apply_dunkl_laplacian(b2, plain, x);
    CHECK(fd == doctest::Approx(a).epsilon(1e-6));
  }
}
