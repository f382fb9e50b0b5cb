#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "simtile/convex_program.hpp"
#include "simtile/geometry.hpp"

namespace simtile {

enum class Location { Inside, Boundary, Outside };

const char* to_string(Location loc);

enum class BodyKind { Polytope, ConeSpindle, Image, Intersection, Section };

struct Box {
  Vector lo;
  Vector hi;

  int dim() const { return static_cast<int>(lo.size()); }
  double volume() const;
  Box hull(const Box& other) const;
};

struct SupportResult {
  double value = 0.0;
  Vector witness;
};

// Points processed per kernel call.
inline constexpr std::size_t kBlockSize = 256;

// A convex body (compact, convex, nonempty interior). Immutable value with
// shared structure; cheap to copy.
//
//   Polytope      {x : n_i . x <= r_i}
//   ConeSpindle   {x : sqrt(x1^2 + x2^2) + sum_{i>=3} x_i <= 1, x_i >= 0}
//   Image         f(base) for a similarity f; nested images collapse
//   Intersection  conjunction of bodies and extra halfspaces
//   Section       {y in R^(n-1) : chart(y) in base} for a slice chart
class Body {
 public:
  struct Node;

  static Body polytope(std::vector<Halfspace> halfspaces);
  static Body cone_spindle(int dim);
  static Body image(const Similarity& map, const Body& base);
  // Throws InvalidBody when the conjunction has empty interior.
  static Body intersection(std::vector<Body> parts, std::vector<Halfspace> halfspaces = {});
  static std::optional<Body> try_intersection(std::vector<Body> parts,
                                              std::vector<Halfspace> halfspaces = {});
  static Body section(const SliceChart& chart, const Body& base);
  static std::optional<Body> try_section(const SliceChart& chart, const Body& base);

  BodyKind kind() const;
  int dim() const;

  // Variant accessors; each throws InvalidArgument when called on the wrong kind.
  const std::vector<Halfspace>& halfspaces() const;  // Polytope, Intersection
  int cone_dim() const;                               // ConeSpindle
  const Similarity& map() const;                      // Image
  const Body& base() const;                           // Image, Section
  const std::vector<Body>& parts() const;             // Intersection
  const SliceChart& chart() const;                    // Section

  // Minimum slack over the defining inequalities, evaluated through the tree
  // (Image delegates through the inverse map, Section through the chart).
  double margin(const Vector& x) const;
  // Batch form: pts[j][k] for k < n <= kBlockSize.
  void margins(const double* const* pts, std::size_t n, double* out) const;

  const Vector& interior_point() const;
  const Box& bounding_box() const;
  const ConvexProgram& program() const;
  // Vertex list for polytopes small enough to enumerate; null otherwise.
  const std::vector<Vector>* vertices() const;
  // Halfspaces in ambient coordinates when the body is polyhedral
  // (Polytope, Image of a polyhedral body, Intersection of polyhedral parts).
  std::optional<std::vector<Halfspace>> polyhedral_halfspaces() const;

  bool structurally_equal(const Body& other, double tol = 1e-12) const;
  bool same_node(const Body& other) const { return node_ == other.node_; }

 private:
  friend struct BodyAccess;
  explicit Body(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

Location classify(double margin, double tol);
Location membership(const Body& body, const Vector& x, double tol = kDefaultTol);

// max over body of d . x and an attaining point. Polytopes use their vertex
// set when enumerable, ConeSpindle and Image are analytic, everything else
// runs the barrier solver on the body's constraint program.
SupportResult support(const Body& body, const Vector& direction);

// Radius R with body inside ball(center, R): exact for polytopes with
// vertices, cone spindles and their images; an upper bound otherwise.
double bounding_radius_about(const Body& body, const Vector& center);

// True when inner is contained in outer by a structural certificate:
// equality, or one side a homothetic image of the other about a point of the
// smaller body with the appropriate ratio.
bool certainly_contains(const Body& outer, const Body& inner);

// Brute-force vertex enumeration over dim-subsets of the halfspaces.
std::vector<Vector> enumerate_vertices(const std::vector<Halfspace>& halfspaces, int dim);

}  // namespace simtile
