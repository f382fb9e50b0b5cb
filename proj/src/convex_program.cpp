#include "simtile/convex_program.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "simtile/errors.hpp"

namespace simtile {

namespace {

constexpr double kBoxBound = 1e8;
constexpr double kUnboundedThreshold = 1e7;
constexpr double kDegenerateRow = 1e-14;

}  // namespace

ConvexProgram ConvexProgram::substitute(const Matrix& P, const Vector& shift) const {
  require_same_dim(P.rows(), dim, "program substitute");
  require_same_dim(shift.size(), dim, "program substitute shift");
  ConvexProgram out(static_cast<int>(P.cols()));
  out.trivially_empty = trivially_empty;
  for (const auto& row : linear) {
    Vector a = P.transpose() * row.a;
    const double b = row.b - row.a.dot(shift);
    if (a.norm() <= kDegenerateRow * (1.0 + row.a.norm())) {
      if (!(b > 0.0)) out.trivially_empty = true;
      continue;
    }
    out.linear.push_back({std::move(a), b});
  }
  for (const auto& row : cones) {
    ConeRow r;
    r.A = row.A * P;
    r.q = row.A * shift + row.q;
    r.c = P.transpose() * row.c;
    r.e = row.e - row.c.dot(shift);
    out.cones.push_back(std::move(r));
  }
  return out;
}

void ConvexProgram::append(const ConvexProgram& other) {
  require_same_dim(dim, other.dim, "program append");
  linear.insert(linear.end(), other.linear.begin(), other.linear.end());
  cones.insert(cones.end(), other.cones.begin(), other.cones.end());
  trivially_empty = trivially_empty || other.trivially_empty;
}

double ConvexProgram::slack(const Vector& x) const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& row : linear) m = std::min(m, row.b - row.a.dot(x));
  for (const auto& row : cones) m = std::min(m, row.e - row.c.dot(x) - (row.A * x + row.q).norm());
  return m;
}

namespace {

// Barrier problem over z in R^N:
//   minimize  objective . z
//   s.t.      g_i . z <= h_i                       (linear)
//             ||A_k z + q_k|| <= e_k - c_k . z      (cone)
struct Barrier {
  std::vector<LinearRow> linear;
  std::vector<ConeRow> cones;
  Vector objective;

  double degree() const { return static_cast<double>(linear.size() + 2 * cones.size()); }

  bool feasible(const Vector& z) const {
    for (const auto& r : linear) {
      if (!(r.b - r.a.dot(z) > 0.0)) return false;
    }
    for (const auto& r : cones) {
      const double u = r.e - r.c.dot(z);
      const Vector w = r.A * z + r.q;
      if (!(u > 0.0) || !(u * u - w.squaredNorm() > 0.0)) return false;
    }
    return true;
  }

  double value(const Vector& z, double t) const {
    double f = t * objective.dot(z);
    for (const auto& r : linear) f -= std::log(r.b - r.a.dot(z));
    for (const auto& r : cones) {
      const double u = r.e - r.c.dot(z);
      f -= std::log(u * u - (r.A * z + r.q).squaredNorm());
    }
    return f;
  }

  void derivatives(const Vector& z, double t, Vector& grad, Matrix& hess) const {
    const Eigen::Index n = z.size();
    grad = t * objective;
    hess = Matrix::Zero(n, n);
    for (const auto& r : linear) {
      const double s = r.b - r.a.dot(z);
      grad += r.a / s;
      hess += (r.a * r.a.transpose()) / (s * s);
    }
    for (const auto& r : cones) {
      const double u = r.e - r.c.dot(z);
      const Vector w = r.A * z + r.q;
      const double phi = u * u - w.squaredNorm();
      const Vector dphi = -2.0 * u * r.c - 2.0 * r.A.transpose() * w;
      const Matrix d2phi = 2.0 * (r.c * r.c.transpose()) - 2.0 * (r.A.transpose() * r.A);
      grad -= dphi / phi;
      hess += (dphi * dphi.transpose()) / (phi * phi) - d2phi / phi;
    }
  }

  // Newton centering at fixed t.
  void center(Vector& z, double t) const {
    Vector grad;
    Matrix hess;
    for (int iter = 0; iter < 200; ++iter) {
      derivatives(z, t, grad, hess);
      Eigen::LDLT<Matrix> ldlt(hess);
      Vector step = -ldlt.solve(grad);
      if (ldlt.info() != Eigen::Success || !step.allFinite()) {
        const double reg = 1e-12 * (1.0 + hess.diagonal().cwiseAbs().maxCoeff());
        step = -(hess + reg * Matrix::Identity(hess.rows(), hess.cols())).ldlt().solve(grad);
        if (!step.allFinite()) return;
      }
      const double decrement = -grad.dot(step);
      if (decrement * 0.5 <= 1e-12) return;
      const double f0 = value(z, t);
      double alpha = 1.0;
      while (alpha > 1e-18 && !feasible(z + alpha * step)) alpha *= 0.5;
      while (alpha > 1e-18 && value(z + alpha * step, t) > f0 - 0.25 * alpha * decrement) {
        alpha *= 0.5;
      }
      if (alpha <= 1e-18) return;
      z += alpha * step;
    }
  }

  Vector solve(Vector z, double rel_gap) const {
    const double m = degree();
    double t = 1.0;
    for (int outer = 0; outer < 80; ++outer) {
      center(z, t);
      const double scale = 1.0 + std::abs(objective.dot(z));
      if (m / t < rel_gap * scale) break;
      t *= 8.0;
    }
    return z;
  }
};

void add_box(std::vector<LinearRow>& rows, int dim, int total_vars) {
  for (int i = 0; i < dim; ++i) {
    for (double sign : {1.0, -1.0}) {
      Vector a = Vector::Zero(total_vars);
      a[i] = sign;
      rows.push_back({std::move(a), kBoxBound});
    }
  }
}

}  // namespace

DeepestPoint deepest_point(const ConvexProgram& program, const Vector& start) {
  require_same_dim(start.size(), program.dim, "deepest_point start");
  const int n = program.dim;
  if (program.trivially_empty) return {start, -std::numeric_limits<double>::infinity()};

  // Variables (x, s); every row normalized so that slack >= s implies a ball
  // of radius s around x satisfies that row.
  Barrier barrier;
  barrier.objective = Vector::Zero(n + 1);
  barrier.objective[n] = -1.0;
  std::vector<double> row_slack;
  for (const auto& row : program.linear) {
    const double norm = row.a.norm();
    Vector a(n + 1);
    a.head(n) = row.a / norm;
    a[n] = 1.0;
    barrier.linear.push_back({std::move(a), row.b / norm});
  }
  for (const auto& row : program.cones) {
    const double lipschitz = [&] {
      double sa = 0.0;
      if (row.A.size() > 0) sa = Eigen::JacobiSVD<Matrix>(row.A).singularValues()[0];
      return sa + row.c.norm();
    }();
    const double nu = lipschitz > 0.0 ? lipschitz : 1.0;
    ConeRow r;
    r.A = Matrix::Zero(row.A.rows(), n + 1);
    r.A.leftCols(n) = row.A / nu;
    r.q = row.q / nu;
    r.c = Vector::Zero(n + 1);
    r.c.head(n) = row.c / nu;
    r.c[n] = 1.0;
    r.e = row.e / nu;
    barrier.cones.push_back(std::move(r));
  }
  add_box(barrier.linear, n, n + 1);
  // Cap on s keeps the problem bounded even for degenerate input.
  {
    Vector a = Vector::Zero(n + 1);
    a[n] = 1.0;
    barrier.linear.push_back({std::move(a), kBoxBound});
  }

  Vector x0 = start;
  if (x0.cwiseAbs().maxCoeff() >= kUnboundedThreshold) x0.setZero();
  Vector z(n + 1);
  z.head(n) = x0;
  double s_min = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < barrier.linear.size(); ++i) {
    const auto& r = barrier.linear[i];
    s_min = std::min(s_min, r.b - r.a.head(n).dot(x0) - r.a[n] * 0.0);
  }
  for (const auto& r : barrier.cones) {
    s_min = std::min(s_min, r.e - r.c.head(n).dot(x0) - (r.A.leftCols(n) * x0 + r.q).norm());
  }
  z[n] = s_min - 1.0;
  if (!barrier.feasible(z)) throw Error("deepest_point: failed to construct a feasible start");

  z = barrier.solve(std::move(z), 1e-12);
  return DeepestPoint{z.head(n), z[n]};
}

LinearMaximum maximize_linear(const ConvexProgram& program, const Vector& direction,
                              const Vector& interior) {
  require_same_dim(direction.size(), program.dim, "maximize_linear direction");
  require_same_dim(interior.size(), program.dim, "maximize_linear interior");
  const int n = program.dim;
  Barrier barrier;
  barrier.objective = -direction;
  barrier.linear = program.linear;
  barrier.cones = program.cones;
  add_box(barrier.linear, n, n);
  if (!barrier.feasible(interior)) {
    throw PreconditionViolation("maximize_linear: start point is not strictly feasible");
  }
  Vector x = barrier.solve(interior, 1e-11);
  LinearMaximum out;
  out.unbounded = x.cwiseAbs().maxCoeff() > kUnboundedThreshold;
  out.value = direction.dot(x);
  out.point = std::move(x);
  return out;
}

}  // namespace simtile
