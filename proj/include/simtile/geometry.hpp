#pragma once

#include <cstddef>
#include <string>

#include <Eigen/Dense>

namespace simtile {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline constexpr double kDefaultTol = 1e-9;
inline constexpr double kUnitNormalTol = 1e-12;
inline constexpr double kOrthogonalityTol = 1e-10;

// Throws DimensionMismatch unless a and b have equal length.
void require_same_dim(std::ptrdiff_t a, std::ptrdiff_t b, const char* what);

// Throws InvalidArgument on an empty vector or a non-finite coordinate.
void require_valid_vector(const Vector& v, const char* what);

Vector unit_vector(int dim, int axis);

// {x : normal . x = offset}
struct Hyperplane {
  Vector normal;
  double offset = 0.0;

  // Normalizes (normal, offset) jointly so the stored normal is unit length.
  static Hyperplane from(const Vector& normal, double offset);
  static Hyperplane through(const Vector& normal, const Vector& point);

  int dim() const { return static_cast<int>(normal.size()); }
  double signed_distance(const Vector& x) const { return normal.dot(x) - offset; }
};

// {x : normal . x <= offset}
struct Halfspace {
  Vector normal;
  double offset = 0.0;

  static Halfspace from(const Vector& normal, double offset);

  int dim() const { return static_cast<int>(normal.size()); }
  double slack(const Vector& x) const;
};

// x -> scale * rotation * x + translation, with rotation orthogonal.
class Similarity {
 public:
  // Validates orthogonality (1e-10 entrywise) and scale > 0.
  Similarity(double scale, Matrix rotation, Vector translation);

  static Similarity identity(int dim);
  // Homothety with ratio `scale` that fixes `center`.
  static Similarity homothety(double scale, const Vector& center);
  // scale * rotation about `center`.
  static Similarity about(double scale, const Matrix& rotation, const Vector& center);

  int dim() const { return static_cast<int>(translation_.size()); }
  double scale() const { return scale_; }
  const Matrix& rotation() const { return rotation_; }
  const Vector& translation() const { return translation_; }
  bool is_homothety(double tol = kOrthogonalityTol) const;

  // Number of compositions since the rotation was last re-orthonormalized.
  int chain_depth() const { return chain_depth_; }

  Vector apply(const Vector& x) const;

 private:
  friend Similarity compose(const Similarity& f, const Similarity& g);
  Similarity(double scale, Matrix rotation, Vector translation, int depth, bool validate);

  double scale_;
  Matrix rotation_;
  Vector translation_;
  int chain_depth_ = 0;
};

inline constexpr int kReorthonormalizeEvery = 64;

// f o g
Similarity compose(const Similarity& f, const Similarity& g);
Similarity invert(const Similarity& f);

struct FixedPointSolution {
  Vector point;
  double condition = 0.0;  // of (I - scale * rotation)
};

// Solves (I - scale*rotation) x = translation by partially pivoted LU.
// NoUniqueFixedPoint when the system is numerically singular or inconsistent.
FixedPointSolution solve_fixed_point(const Similarity& f);
inline Vector fixed_point(const Similarity& f) { return solve_fixed_point(f).point; }

// Smallest k <= k_max with max|M^k - I| < delta; NotFoundWithinBudget otherwise.
int power_near_identity(const Matrix& rotation, double delta, int k_max);

// Max entrywise |a - b|.
double max_abs_diff(const Matrix& a, const Matrix& b);

// Nearest orthogonal matrix (polar factor).
Matrix orthonormalize(const Matrix& m);

// Planar rotation by `angle` acting on axes (i, j) of R^dim.
Matrix plane_rotation(int dim, int i, int j, double angle);

// Affine isometric chart identifying a hyperplane with R^(n-1).
class SliceChart {
 public:
  // Origin is the point of the hyperplane nearest `anchor`.
  SliceChart(const Hyperplane& h, const Vector& anchor);
  explicit SliceChart(const Hyperplane& h);
  // Deserialization path; checks orthonormality.
  SliceChart(const Hyperplane& h, Vector origin, Matrix frame);

  const Hyperplane& hyperplane() const { return plane_; }
  const Vector& origin() const { return origin_; }
  // n x (n-1); columns are the frame vectors.
  const Matrix& frame() const { return frame_; }
  int ambient_dim() const { return static_cast<int>(origin_.size()); }
  int chart_dim() const { return ambient_dim() - 1; }

  Vector to_chart(const Vector& x) const;
  Vector to_ambient(const Vector& y) const;

 private:
  void check() const;

  Hyperplane plane_;
  Vector origin_;
  Matrix frame_;
};

}  // namespace simtile
