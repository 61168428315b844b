#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "dunkl/common.hpp"
#include "dunkl/geometry.hpp"
#include "dunkl/root_system.hpp"

using namespace dunkl;

namespace {

const std::vector<double> k11 = {1.0, 1.0};

std::vector<Vec> coords_of(const GridDomain& g, const std::vector<std::size_t>& nodes) {
  std::vector<Vec> out;
  for (std::size_t n : nodes) out.push_back(g.node_coords(n));
  return out;
}

}  // namespace

TEST_CASE("unit box at h = 0.5 has one interior and eight ring nodes") {
  const GridDomain g = discretize(DomainSpec::box({0.0, 0.0}, {1.0, 1.0}), 0.5);
  REQUIRE(g.interior_nodes().size() == 1);
  CHECK(g.node_coords(g.interior_nodes()[0]) == Vec{0.5, 0.5});
  CHECK(g.ring_nodes().size() == 8);
  for (const Vec& x : coords_of(g, g.ring_nodes())) {
    const bool on_boundary = x[0] == 0.0 || x[0] == 1.0 || x[1] == 0.0 || x[1] == 1.0;
    CHECK(on_boundary);
  }
}

TEST_CASE("1-D interval at h = 0.25") {
  const GridDomain g = discretize(DomainSpec::box({0.0}, {1.0}), 0.25);
  const std::vector<Vec> interior = coords_of(g, g.interior_nodes());
  REQUIRE(interior.size() == 3);
  CHECK(interior[0] == Vec{0.25});
  CHECK(interior[1] == Vec{0.5});
  CHECK(interior[2] == Vec{0.75});
  const std::vector<Vec> ring = coords_of(g, g.ring_nodes());
  REQUIRE(ring.size() == 2);
  CHECK(ring[0] == Vec{0.0});
  CHECK(ring[1] == Vec{1.0});
}

TEST_CASE("discretize error cases") {
  CHECK_THROWS_AS(discretize(DomainSpec::ball({0.0, 0.0}, 0.1), 1.0), GridError);
  CHECK_THROWS_AS(discretize(DomainSpec::box({0.0}, {1.0}), 0.3), GridError);
  CHECK_THROWS_AS(discretize(DomainSpec::box({0.0}, {1.0}), -0.1), GridError);
  CHECK_THROWS_AS(DomainSpec::box({1.0}, {0.0}), std::invalid_argument);
  CHECK_THROWS_AS(DomainSpec::ball({0.0}, -1.0), std::invalid_argument);
}

TEST_CASE("classification invariants on boxes and balls") {
  const DomainSpec shapes[] = {DomainSpec::box({2.0, 0.5}, {3.0, 1.0}),
                               DomainSpec::ball({2.5, 1.5}, 0.8)};
  for (const DomainSpec& domain : shapes) {
    for (double h : {0.25, 0.125}) {
      const GridDomain g = discretize(domain, h);
      Vec x(2);
      for (std::size_t node : g.interior_nodes()) {
        g.node_coords(node, x);
        CHECK(domain.contains(x));
        for (int axis = 0; axis < 2; ++axis)
          for (int dir = -1; dir <= 1; dir += 2) {
            const std::size_t nb = g.neighbor(node, axis, dir);
            REQUIRE(nb != npos);
            CHECK(g.node_class(nb) != NodeClass::exterior);
          }
      }
      for (std::size_t node : g.ring_nodes()) {
        g.node_coords(node, x);
        CHECK_FALSE(domain.contains(x));  // ring nodes are not interior points
      }
      if (domain.kind() == DomainSpec::Kind::ball) {
        // every ring node touches the interior
        for (std::size_t node : g.ring_nodes()) {
          bool touches = false;
          for (int axis = 0; axis < 2 && !touches; ++axis)
            for (int dir = -1; dir <= 1; dir += 2) {
              const std::size_t nb = g.neighbor(node, axis, dir);
              if (nb != npos && g.node_class(nb) == NodeClass::interior) touches = true;
            }
          CHECK(touches);
        }
      }
    }
  }
}

TEST_CASE("box ring lies exactly on the boundary") {
  const GridDomain g = discretize(DomainSpec::box({2.0, 0.5}, {3.0, 1.0}), 0.125);
  Vec x(2);
  for (std::size_t node : g.ring_nodes()) {
    g.node_coords(node, x);
    const bool on_face =
        x[0] == 2.0 || x[0] == 3.0 || x[1] == 0.5 || x[1] == 1.0;
    CHECK(on_face);
  }
}

TEST_CASE("halving h at least quadruples the interior count in 2-D") {
  const DomainSpec box = DomainSpec::box({2.0, 0.5}, {3.0, 1.0});
  for (double h : {0.25, 0.125, 0.0625}) {
    const std::size_t coarse = discretize(box, h).interior_nodes().size();
    const std::size_t fine = discretize(box, h / 2.0).interior_nodes().size();
    CHECK(fine >= 4 * coarse);
  }
}

TEST_CASE("admissibility of the B2 reference box") {
  const RootSystem b2 = builtin_root_system("B2", k11);
  const DomainSpec box = DomainSpec::box({2.0, 0.5}, {3.0, 1.0});
  const GridDomain grid = discretize(box, 0.125);
  const AdmissibilityReport r = check_admissible(box, b2, 0.25, &grid);
  CHECK(r.pass);
  CHECK(r.sign_vector_constant);
  CHECK(r.reflections_disjoint);
  // the binding hyperplane is x2 = 0 at distance 0.5
  CHECK(r.min_hyperplane_distance == doctest::Approx(0.5));
}

TEST_CASE("boxes crossing or touching hyperplanes are rejected") {
  const RootSystem b2 = builtin_root_system("B2", k11);
  // crosses x1 = 0
  const AdmissibilityReport crossing =
      check_admissible(DomainSpec::box({-1.0, 2.0}, {1.0, 3.0}), b2, 0.1);
  CHECK_FALSE(crossing.pass);
  CHECK_FALSE(crossing.sign_vector_constant);
  CHECK(crossing.min_hyperplane_distance == 0.0);
  // touches the diagonal x1 = x2 at a corner
  const AdmissibilityReport touching =
      check_admissible(DomainSpec::box({1.0, 0.5}, {2.0, 1.0}), b2, 0.1);
  CHECK_FALSE(touching.pass);
  // the same box passes when only the coordinate hyperplanes are active
  const RootSystem axes = builtin_root_system("A1xA1", k11);
  CHECK(check_admissible(DomainSpec::box({1.0, 0.5}, {2.0, 1.0}), axes, 0.1).pass);
  // distance margin: passes at delta 0.4, fails at delta 0.6
  const DomainSpec ref = DomainSpec::box({2.0, 0.5}, {3.0, 1.0});
  CHECK(check_admissible(ref, b2, 0.4).pass);
  CHECK_FALSE(check_admissible(ref, b2, 0.6).pass);
}

TEST_CASE("k = 0 is vacuously admissible") {
  const RootSystem zero = builtin_root_system("B2", std::vector<double>{0.0, 0.0});
  const AdmissibilityReport r =
      check_admissible(DomainSpec::box({-1.0, -1.0}, {1.0, 1.0}), zero, 0.1);
  CHECK(r.pass);
  CHECK(std::isinf(r.min_hyperplane_distance));
}

TEST_CASE("admissible balls") {
  const RootSystem b2 = builtin_root_system("B2", k11);
  CHECK(check_admissible(DomainSpec::ball({3.0, 1.0}, 0.5), b2, 0.25).pass);
  // ball poking through x2 = 0
  CHECK_FALSE(check_admissible(DomainSpec::ball({3.0, 0.4}, 0.5), b2, 0.1).pass);
}

TEST_CASE("reflected images") {
  // rank-1: interval (1,2), node 1.5 reflects to -1.5
  const RootSystem a1 = builtin_root_system("A1", std::vector<double>{1.0});
  const GridDomain g1 = discretize(DomainSpec::box({1.0}, {2.0}), 0.5);
  const ReflectedImages im1(g1, a1);
  REQUIRE(g1.interior_nodes().size() == 1);
  CHECK(im1.coords(0, 0)[0] == doctest::Approx(-1.5));

  // A1xA1 on the reference box
  const RootSystem axes = builtin_root_system("A1xA1", k11);
  const GridDomain g2 = discretize(DomainSpec::box({2.0, 0.5}, {3.0, 1.0}), 0.25);
  const ReflectedImages im2(g2, axes);
  const std::size_t node = g2.find_node(Vec{2.0 + 0.0, 0.75});
  // (2, 0.75) is a ring node; use (2.25, 0.75) instead
  const std::size_t inner = g2.find_node(Vec{2.25, 0.75});
  REQUIRE(inner != npos);
  const std::size_t o = g2.interior_ordinal(inner);
  REQUIRE(o != npos);
  CHECK(im2.coords(o, 1)[0] == doctest::Approx(2.25));
  CHECK(im2.coords(o, 1)[1] == doctest::Approx(-0.75));
  (void)node;

  // B2 root (1,-1) swaps coordinates out of the box
  const RootSystem b2 = builtin_root_system("B2", k11);
  const GridDomain g3 = discretize(DomainSpec::box({2.0, 0.5}, {3.0, 1.0}), 0.25);
  const ReflectedImages im3(g3, b2);
  const std::size_t node3 = g3.find_node(Vec{2.5, 0.75});
  REQUIRE(node3 != npos);
  const std::size_t o3 = g3.interior_ordinal(node3);
  CHECK(im3.coords(o3, 3)[0] == doctest::Approx(0.75));
  CHECK(im3.coords(o3, 3)[1] == doctest::Approx(2.5));

  // every active image lies strictly outside the domain
  for (std::size_t ord = 0; ord < g3.interior_nodes().size(); ++ord)
    for (std::size_t r = 0; r < b2.root_count(); ++r)
      CHECK_FALSE(g3.domain().contains(im3.coords(ord, r)));
}

TEST_CASE("reflected images reject inadmissible configurations") {
  // box straddling x1 = 0: reflections of interior nodes stay inside
  const RootSystem axes = builtin_root_system("A1xA1", k11);
  const GridDomain bad = discretize(DomainSpec::box({-1.0, 1.0}, {1.0, 2.0}), 0.25);
  CHECK_THROWS_AS(ReflectedImages(bad, axes), AdmissibilityError);
}

TEST_CASE("find_node and neighbors") {
  const GridDomain g = discretize(DomainSpec::box({0.0, 0.0}, {1.0, 1.0}), 0.25);
  const std::size_t center = g.find_node(Vec{0.5, 0.5});
  REQUIRE(center != npos);
  CHECK(g.node_class(center) == NodeClass::interior);
  CHECK(g.find_node(Vec{0.51, 0.5}) == npos);
  CHECK(g.find_node(Vec{5.0, 5.0}) == npos);
  const std::size_t right = g.neighbor(center, 0, 1);
  CHECK(g.node_coords(right) == Vec{0.75, 0.5});
  // walking off the lattice returns npos
  std::size_t edge = center;
  for (int i = 0; i < 2; ++i) edge = g.neighbor(edge, 0, 1);
  CHECK(g.neighbor(edge, 0, 1) == npos);
}

TEST_CASE("mask domains classify through the indicator") {
  // L-shaped region inside the unit square
  const DomainSpec mask = DomainSpec::mask(
      {0.0, 0.0}, {1.0, 1.0}, [](std::span<const double> x) {
        return !(x[0] > 0.5 && x[1] > 0.5);
      });
  const GridDomain g = discretize(mask, 0.125);
  Vec x(2);
  for (std::size_t node : g.interior_nodes()) {
    g.node_coords(node, x);
    CHECK(mask.contains(x));
  }
  CHECK(g.interior_nodes().size() > 0);
  // the cut-out corner is not interior
  const std::size_t corner = g.find_node(Vec{0.75, 0.75});
  REQUIRE(corner != npos);
  CHECK(g.node_class(corner) != NodeClass::interior);
}
