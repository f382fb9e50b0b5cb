#pragma once

#include <vector>

#include "simtile/geometry.hpp"

namespace simtile {

// a . x <= b
struct LinearRow {
  Vector a;
  double b = 0.0;
};

// ||A x + q|| + c . x <= e
struct ConeRow {
  Matrix A;
  Vector q;
  Vector c;
  double e = 0.0;
};

// Finite conjunction of linear and second-order-cone constraints. Every
// body in the library compiles to one, in its own ambient coordinates.
struct ConvexProgram {
  int dim = 0;
  std::vector<LinearRow> linear;
  std::vector<ConeRow> cones;
  // Set when a substitution produced a constant constraint with no slack.
  bool trivially_empty = false;

  explicit ConvexProgram(int d = 0) : dim(d) {}

  // Program over z for the set {z : P z + shift satisfies *this}.
  ConvexProgram substitute(const Matrix& P, const Vector& shift) const;
  void append(const ConvexProgram& other);

  // min over constraints of (rhs - lhs); positive strictly inside.
  double slack(const Vector& x) const;
};

struct DeepestPoint {
  Vector point;
  // Lower bound on the radius of a ball around `point` inside the set;
  // negative when the set has no interior.
  double depth = 0.0;
};

// Phase-one barrier solve: maximizes the normalized common slack.
DeepestPoint deepest_point(const ConvexProgram& program, const Vector& start);

struct LinearMaximum {
  Vector point;
  double value = 0.0;
  bool unbounded = false;
};

// max direction . x over the set, from a strictly feasible `interior`.
// Duality gap at exit is below 1e-11 * (1 + |value|).
LinearMaximum maximize_linear(const ConvexProgram& program, const Vector& direction,
                              const Vector& interior);

}  // namespace simtile
