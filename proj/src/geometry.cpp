#include "simtile/geometry.hpp"

#include <cmath>
#include <string>

#include "simtile/errors.hpp"

namespace simtile {

void require_same_dim(std::ptrdiff_t a, std::ptrdiff_t b, const char* what) {
  if (a != b) {
    throw DimensionMismatch(std::string(what) + ": dimension " + std::to_string(a) + " vs " +
                            std::to_string(b));
  }
}

void require_valid_vector(const Vector& v, const char* what) {
  if (v.size() < 1) throw InvalidArgument(std::string(what) + ": empty vector");
  if (!v.allFinite()) throw InvalidArgument(std::string(what) + ": non-finite coordinate");
}

Vector unit_vector(int dim, int axis) {
  Vector e = Vector::Zero(dim);
  e[axis] = 1.0;
  return e;
}

namespace {

std::pair<Vector, double> normalized(const Vector& normal, double offset, const char* what) {
  require_valid_vector(normal, what);
  if (!std::isfinite(offset)) throw InvalidArgument(std::string(what) + ": non-finite offset");
  const double n = normal.norm();
  if (n < 1e-300) throw InvalidArgument(std::string(what) + ": zero normal");
  if (std::abs(n - 1.0) <= kUnitNormalTol) return {normal, offset};
  return {normal / n, offset / n};
}

}  // namespace

Hyperplane Hyperplane::from(const Vector& normal, double offset) {
  auto [n, r] = normalized(normal, offset, "hyperplane");
  return Hyperplane{std::move(n), r};
}

Hyperplane Hyperplane::through(const Vector& normal, const Vector& point) {
  require_same_dim(normal.size(), point.size(), "hyperplane through point");
  Vector n = normalized(normal, 0.0, "hyperplane").first;
  const double r = n.dot(point);
  return Hyperplane{std::move(n), r};
}

Halfspace Halfspace::from(const Vector& normal, double offset) {
  auto [n, r] = normalized(normal, offset, "halfspace");
  return Halfspace{std::move(n), r};
}

double Halfspace::slack(const Vector& x) const {
  double acc = 0.0;
  for (Eigen::Index j = 0; j < normal.size(); ++j) acc = acc + normal[j] * x[j];
  return offset - acc;
}

// --- Similarity -------------------------------------------------------------

Similarity::Similarity(double scale, Matrix rotation, Vector translation)
    : Similarity(scale, std::move(rotation), std::move(translation), 0, true) {}

Similarity::Similarity(double scale, Matrix rotation, Vector translation, int depth, bool validate)
    : scale_(scale),
      rotation_(std::move(rotation)),
      translation_(std::move(translation)),
      chain_depth_(depth) {
  if (!validate) return;
  require_valid_vector(translation_, "similarity translation");
  if (!(scale_ > 0.0) || !std::isfinite(scale_)) {
    throw InvalidArgument("similarity scale must be positive and finite");
  }
  if (rotation_.rows() != translation_.size() || rotation_.cols() != translation_.size()) {
    throw DimensionMismatch("similarity rotation must be square of the translation's dimension");
  }
  if (!rotation_.allFinite()) throw InvalidArgument("similarity rotation: non-finite entry");
  const Matrix gram = rotation_.transpose() * rotation_;
  if (max_abs_diff(gram, Matrix::Identity(dim(), dim())) > kOrthogonalityTol) {
    throw InvalidArgument("similarity rotation is not orthogonal");
  }
}

Similarity Similarity::identity(int dim) {
  return Similarity(1.0, Matrix::Identity(dim, dim), Vector::Zero(dim));
}

Similarity Similarity::homothety(double scale, const Vector& center) {
  return about(scale, Matrix::Identity(center.size(), center.size()), center);
}

Similarity Similarity::about(double scale, const Matrix& rotation, const Vector& center) {
  // x -> scale * R (x - c) + c
  Similarity linear(scale, rotation, Vector::Zero(center.size()));
  return Similarity(scale, rotation, center - linear.apply(center));
}

bool Similarity::is_homothety(double tol) const {
  return max_abs_diff(rotation_, Matrix::Identity(dim(), dim())) <= tol;
}

Vector Similarity::apply(const Vector& x) const {
  require_same_dim(x.size(), translation_.size(), "similarity apply");
  const Eigen::Index n = x.size();
  Vector y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double acc = rotation_(i, 0) * x[0];
    for (Eigen::Index j = 1; j < n; ++j) acc = acc + rotation_(i, j) * x[j];
    y[i] = scale_ * acc + translation_[i];
  }
  return y;
}

Similarity compose(const Similarity& f, const Similarity& g) {
  require_same_dim(f.dim(), g.dim(), "compose");
  Matrix rotation = f.rotation() * g.rotation();
  int depth = f.chain_depth() + g.chain_depth() + 1;
  if (depth >= kReorthonormalizeEvery) {
    rotation = orthonormalize(rotation);
    depth = 0;
  }
  return Similarity(f.scale() * g.scale(), std::move(rotation), f.apply(g.translation()), depth,
                    false);
}

Similarity invert(const Similarity& f) {
  const double s = 1.0 / f.scale();
  Matrix rt = f.rotation().transpose();
  Similarity linear(s, rt, Vector::Zero(f.dim()));
  Vector t = -linear.apply(f.translation());
  return Similarity(s, std::move(rt), std::move(t));
}

FixedPointSolution solve_fixed_point(const Similarity& f) {
  const int n = f.dim();
  const Matrix system = Matrix::Identity(n, n) - f.scale() * f.rotation();
  Eigen::JacobiSVD<Matrix> svd(system);
  const auto& sv = svd.singularValues();
  const double smax = sv[0];
  const double smin = sv[sv.size() - 1];
  if (smax == 0.0 || smin < 1e-12 * smax) {
    throw NoUniqueFixedPoint("similarity has no unique fixed point (I - scale*rotation singular)");
  }
  Vector x = system.partialPivLu().solve(f.translation());
  const double residual = (f.apply(x) - x).norm();
  if (!x.allFinite() || residual > 1e-9 * (1.0 + x.norm())) {
    throw NoUniqueFixedPoint("fixed-point solve residual too large");
  }
  return FixedPointSolution{std::move(x), smax / smin};
}

int power_near_identity(const Matrix& rotation, double delta, int k_max) {
  if (rotation.rows() != rotation.cols()) throw DimensionMismatch("rotation must be square");
  if (!(delta > 0.0)) throw InvalidArgument("delta must be positive");
  if (k_max < 1) throw InvalidArgument("k_max must be >= 1");
  const Matrix id = Matrix::Identity(rotation.rows(), rotation.cols());
  Matrix power = rotation;
  for (int k = 1; k <= k_max; ++k) {
    if (max_abs_diff(power, id) < delta) return k;
    power = power * rotation;
    if (k % kReorthonormalizeEvery == 0) power = orthonormalize(power);
  }
  throw NotFoundWithinBudget("no power of the rotation within delta of I for k <= " +
                             std::to_string(k_max));
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  require_same_dim(a.rows(), b.rows(), "max_abs_diff rows");
  require_same_dim(a.cols(), b.cols(), "max_abs_diff cols");
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

Matrix orthonormalize(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().transpose();
}

Matrix plane_rotation(int dim, int i, int j, double angle) {
  Matrix r = Matrix::Identity(dim, dim);
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  r(i, i) = c;
  r(i, j) = -s;
  r(j, i) = s;
  r(j, j) = c;
  return r;
}

// --- SliceChart -------------------------------------------------------------

namespace {

// Orthonormal basis of normal^perp: the trailing columns of a full QR of the normal.
Matrix complement_frame(const Vector& normal) {
  const Eigen::Index n = normal.size();
  Eigen::HouseholderQR<Matrix> qr(normal);
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  return q.rightCols(n - 1);
}

}  // namespace

SliceChart::SliceChart(const Hyperplane& h, const Vector& anchor)
    : plane_(Hyperplane::from(h.normal, h.offset)) {
  require_same_dim(h.dim(), anchor.size(), "slice chart anchor");
  if (plane_.dim() < 2) throw InvalidArgument("slice chart needs ambient dimension >= 2");
  origin_ = anchor - plane_.signed_distance(anchor) * plane_.normal;
  frame_ = complement_frame(plane_.normal);
  check();
}

SliceChart::SliceChart(const Hyperplane& h) : SliceChart(h, Vector::Zero(h.dim())) {}

SliceChart::SliceChart(const Hyperplane& h, Vector origin, Matrix frame)
    : plane_(Hyperplane::from(h.normal, h.offset)),
      origin_(std::move(origin)),
      frame_(std::move(frame)) {
  check();
  if (std::abs(plane_.signed_distance(origin_)) > 1e-9 * (1.0 + origin_.norm())) {
    throw InvalidArgument("slice chart origin is not on the hyperplane");
  }
}

void SliceChart::check() const {
  const Eigen::Index n = plane_.normal.size();
  require_same_dim(origin_.size(), n, "slice chart origin");
  if (frame_.rows() != n || frame_.cols() != n - 1) {
    throw DimensionMismatch("slice chart frame must be n x (n-1)");
  }
  const Matrix gram = frame_.transpose() * frame_;
  if (max_abs_diff(gram, Matrix::Identity(n - 1, n - 1)) > kOrthogonalityTol ||
      (frame_.transpose() * plane_.normal).cwiseAbs().maxCoeff() > kOrthogonalityTol) {
    throw InvalidArgument("slice chart frame is not orthonormal to the normal");
  }
}

Vector SliceChart::to_chart(const Vector& x) const {
  require_same_dim(x.size(), origin_.size(), "to_chart");
  return frame_.transpose() * (x - origin_);
}

Vector SliceChart::to_ambient(const Vector& y) const {
  require_same_dim(y.size(), frame_.cols(), "to_ambient");
  const Eigen::Index n = origin_.size();
  Vector x(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double acc = frame_(i, 0) * y[0];
    for (Eigen::Index j = 1; j < y.size(); ++j) acc = acc + frame_(i, j) * y[j];
    x[i] = 1.0 * acc + origin_[i];
  }
  return x;
}

}  // namespace simtile
