#include <doctest.h>

#include <cmath>

#include "simtile/convex_program.hpp"
#include "simtile/errors.hpp"

using namespace simtile;

namespace {

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

ConvexProgram box_program(int n, double lo, double hi) {
  ConvexProgram p(n);
  for (int j = 0; j < n; ++j) {
    Vector e = Vector::Zero(n);
    e[j] = 1.0;
    p.linear.push_back({e, hi});
    p.linear.push_back({-e, -lo});
  }
  return p;
}

ConvexProgram disk_program(double r) {
  ConvexProgram p(2);
  p.cones.push_back({Matrix::Identity(2, 2), Vector::Zero(2), Vector::Zero(2), r});
  return p;
}

}  // namespace

TEST_CASE("deepest point of a box is its centre") {
  const DeepestPoint d = deepest_point(box_program(3, 0.0, 2.0), Vector::Constant(3, 5.0));
  CHECK((d.point - Vector::Ones(3)).norm() < 1e-4);
  CHECK(d.depth == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("deepest point reports empty sets") {
  ConvexProgram p(1);
  p.linear.push_back({vec({1}), 0.0});
  p.linear.push_back({vec({-1}), -1.0});
  CHECK(deepest_point(p, vec({0.3})).depth < 0.0);
}

TEST_CASE("linear maximum over a box and a disk") {
  const LinearMaximum b = maximize_linear(box_program(2, -1, 1), vec({1, 2}), Vector::Zero(2));
  CHECK_FALSE(b.unbounded);
  CHECK(b.value == doctest::Approx(3.0).epsilon(1e-9));

  const LinearMaximum d = maximize_linear(disk_program(2.0), vec({3, 4}), Vector::Zero(2));
  CHECK(d.value == doctest::Approx(10.0).epsilon(1e-9));
  CHECK((d.point - vec({1.2, 1.6})).norm() < 1e-4);
}

TEST_CASE("linear maximum detects unboundedness and infeasible starts") {
  ConvexProgram half(2);
  half.linear.push_back({vec({1, 0}), 1.0});
  CHECK(maximize_linear(half, vec({0, 1}), Vector::Zero(2)).unbounded);
  CHECK_THROWS_AS(maximize_linear(box_program(2, 0, 1), vec({1, 0}), vec({5, 5})), PreconditionViolation);
}

TEST_CASE("substitution restricts to an affine image") {
  // Disk of radius 1 restricted to the line x = (t, 0.6).
  Matrix P(2, 1);
  P << 1, 0;
  const ConvexProgram line = disk_program(1.0).substitute(P, vec({0, 0.6}));
  CHECK(line.dim == 1);
  const LinearMaximum m = maximize_linear(line, vec({1}), vec({0}));
  CHECK(m.value == doctest::Approx(0.8).epsilon(1e-9));
  CHECK(line.slack(vec({0})) == doctest::Approx(0.4));
}
