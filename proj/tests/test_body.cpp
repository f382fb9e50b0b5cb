#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "simtile/body.hpp"
#include "simtile/errors.hpp"
#include "simtile/random.hpp"

using namespace simtile;

namespace {

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

Body square() {
  return Body::polytope({Halfspace::from(vec({1, 0}), 1), Halfspace::from(vec({-1, 0}), 0),
                         Halfspace::from(vec({0, 1}), 1), Halfspace::from(vec({0, -1}), 0)});
}

Body triangle() {
  return Body::polytope({Halfspace::from(vec({-1, 0}), 0), Halfspace::from(vec({0, -1}), 0),
                         Halfspace::from(vec({1, 1}), 1)});
}

// Oracle: the cone spindle is conv(unit disk in x1,x2  U  {e_3..e_n}).
double cone_support_by_hull(const Vector& d) {
  double best = -1e300;
  for (int k = 0; k < 20000; ++k) {
    const double a = 2 * std::numbers::pi * k / 20000.0;
    best = std::max(best, d[0] * std::cos(a) + d[1] * std::sin(a));
  }
  for (Eigen::Index i = 2; i < d.size(); ++i) best = std::max(best, d[i]);
  return best;
}

}  // namespace

TEST_CASE("polytope construction and vertices") {
  const Body t = triangle();
  CHECK(t.kind() == BodyKind::Polytope);
  REQUIRE(t.vertices() != nullptr);
  CHECK(t.vertices()->size() == 3);
  CHECK_THROWS_AS(Body::polytope({Halfspace::from(vec({1, 0}), 0), Halfspace::from(vec({-1, 0}), 0)}),
                  InvalidBody);
  CHECK_THROWS_AS(Body::polytope({Halfspace::from(vec({1, 0}), 1)}), InvalidBody);
}

TEST_CASE("membership classification") {
  const Body s = square();
  CHECK(membership(s, vec({0.5, 0.5})) == Location::Inside);
  CHECK(membership(s, vec({1.0, 0.5})) == Location::Boundary);
  CHECK(membership(s, vec({1.0 + 1e-12, 0.5})) == Location::Boundary);
  CHECK(membership(s, vec({1.1, 0.5})) == Location::Outside);
  CHECK(std::string(to_string(Location::Boundary)) == "boundary");
}

TEST_CASE("cone spindle margins and support") {
  const Body k = Body::cone_spindle(4);
  CHECK(membership(k, vec({0, 0, 0.5, 0.5})) == Location::Boundary);
  CHECK(membership(k, vec({0.1, 0.1, 0.2, 0.2})) == Location::Inside);
  CHECK(membership(k, vec({0.1, 0.1, -0.01, 0.2})) == Location::Outside);
  CHECK(membership(k, vec({0.8, 0.0, 0.3, 0.0})) == Location::Outside);
  const CounterRng rng(1);
  for (int i = 0; i < 20; ++i) {
    Vector d(4);
    for (int j = 0; j < 4; ++j) d[j] = rng.normal(i, j);
    const SupportResult s = support(k, d);
    CHECK(s.value == doctest::Approx(cone_support_by_hull(d)).epsilon(1e-6));
    CHECK(membership(k, s.witness, 1e-7) != Location::Outside);
  }
}

TEST_CASE("image bodies delegate through the inverse map") {
  const Similarity f(0.5, plane_rotation(2, 0, 1, std::numbers::pi / 2), vec({0.5, 0}));
  const Body img = Body::image(f, square());
  const CounterRng rng(2);
  for (int i = 0; i < 500; ++i) {
    const Vector x = vec({rng.uniform(i, 0) * 1.4 - 0.2, rng.uniform(i, 1) * 1.4 - 0.2});
    // Oracle: tile is [0, 1/2]^2.
    const bool inside = x[0] > 1e-6 && x[0] < 0.5 - 1e-6 && x[1] > 1e-6 && x[1] < 0.5 - 1e-6;
    const bool outside = x[0] < -1e-6 || x[0] > 0.5 + 1e-6 || x[1] < -1e-6 || x[1] > 0.5 + 1e-6;
    if (inside) CHECK(membership(img, x) == Location::Inside);
    if (outside) CHECK(membership(img, x) == Location::Outside);
  }
  // Nested images collapse to one map over the base.
  const Body twice = Body::image(f, img);
  CHECK(twice.kind() == BodyKind::Image);
  CHECK(twice.base().kind() == BodyKind::Polytope);
  CHECK(twice.map().scale() == doctest::Approx(0.25));
  CHECK(support(img, vec({1, 1})).value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("intersections") {
  const Body disk = Body::cone_spindle(2);
  const Body box = Body::polytope({Halfspace::from(vec({1, 0}), 0.5), Halfspace::from(vec({-1, 0}), 0.5),
                                   Halfspace::from(vec({0, 1}), 2), Halfspace::from(vec({0, -1}), 2)});
  const Body cap = Body::intersection({disk, box});
  CHECK(cap.kind() == BodyKind::Intersection);
  CHECK(membership(cap, vec({0.4, 0.8})) == Location::Inside);
  CHECK(membership(cap, vec({0.6, 0.0})) == Location::Outside);
  CHECK(membership(cap, vec({0.0, 0.99})) == Location::Inside);
  CHECK(support(cap, vec({0, 1})).value == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(support(cap, vec({1, 0})).value == doctest::Approx(0.5).epsilon(1e-8));

  // Polyhedral conjunctions merge into a polytope.
  const Body sq2 = Body::intersection({square(), triangle()});
  CHECK(sq2.kind() == BodyKind::Polytope);
  CHECK(sq2.vertices()->size() == 3);

  const Body far = Body::image(Similarity::homothety(0.1, vec({10, 10})), square());
  CHECK_FALSE(Body::try_intersection({disk, far}).has_value());
  CHECK_THROWS_AS(Body::intersection({disk, far}), InvalidBody);
}

TEST_CASE("sections through a chart") {
  const Body k = Body::cone_spindle(3);
  const SliceChart chart(Hyperplane::from(vec({0, 0, 1}), 0.5), vec({0, 0, 0.5}));
  const Body s = Body::section(chart, k);
  CHECK(s.dim() == 2);
  // Oracle: substituting x3 = 1/2 gives the disk of radius 1/2.
  const Box& box = s.bounding_box();
  for (int j = 0; j < 2; ++j) {
    CHECK(box.lo[j] == doctest::Approx(-0.5).epsilon(1e-6));
    CHECK(box.hi[j] == doctest::Approx(0.5).epsilon(1e-6));
  }
  CHECK(membership(s, vec({0.35, 0.35})) == Location::Inside);
  CHECK(membership(s, vec({0.36, 0.36})) == Location::Outside);
  const SliceChart miss(Hyperplane::from(vec({0, 0, 1}), 2.0), vec({0, 0, 2.0}));
  CHECK_FALSE(Body::try_section(miss, k).has_value());
}

TEST_CASE("bounding radius") {
  CHECK(bounding_radius_about(square(), vec({0, 0})) == doctest::Approx(std::sqrt(2.0)));
  CHECK(bounding_radius_about(Body::cone_spindle(3), vec({0, 0, 0})) == doctest::Approx(1.0));
  const Body img = Body::image(Similarity::homothety(0.5, vec({1, 1})), square());
  CHECK(bounding_radius_about(img, vec({1, 1})) == doctest::Approx(std::sqrt(0.5)));
}

TEST_CASE("structural containment certificates") {
  const Body s = square();
  const Body quarter = Body::image(Similarity::homothety(0.5, vec({0, 0})), s);
  const Body shifted = Body::image(Similarity::homothety(0.5, vec({2, 2})), s);
  const Body big = Body::image(Similarity::homothety(3.0, vec({0.2, 0.3})), s);
  CHECK(certainly_contains(s, s));
  CHECK(certainly_contains(s, quarter));
  CHECK_FALSE(certainly_contains(quarter, s));
  CHECK_FALSE(certainly_contains(s, shifted));
  CHECK(certainly_contains(big, s));
  CHECK_FALSE(certainly_contains(s, big));
}

TEST_CASE("vertex enumeration matches a hand count") {
  // Unit cube: 8 vertices.
  std::vector<Halfspace> hs;
  for (int j = 0; j < 3; ++j) {
    Vector e = Vector::Zero(3);
    e[j] = 1;
    hs.push_back(Halfspace::from(e, 1));
    hs.push_back(Halfspace::from(-e, 0));
  }
  CHECK(enumerate_vertices(hs, 3).size() == 8);
  // A redundant repeated facet does not duplicate vertices.
  hs.push_back(Halfspace::from(vec({2, 0, 0}), 2));
  CHECK(enumerate_vertices(hs, 3).size() == 8);
}

TEST_CASE("structural equality") {
  CHECK(square().structurally_equal(square()));
  CHECK_FALSE(square().structurally_equal(triangle()));
  const Body a = Body::image(Similarity::homothety(0.5, vec({0, 0})), square());
  const Body b = Body::image(Similarity::homothety(0.5, vec({0, 1e-15})), square());
  CHECK(a.structurally_equal(b));
}
