#include "simtile/body.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "simtile/errors.hpp"
#include "simtile/kernels.hpp"

namespace simtile {

struct Body::Node {
  BodyKind kind = BodyKind::Polytope;
  int dim = 0;
  std::vector<Halfspace> halfspaces;
  int cone = 0;
  std::optional<Similarity> map;
  std::optional<Similarity> inverse;
  std::vector<double> affine_rows;  // row-major matrix fed to the affine kernel
  std::vector<Body> children;
  std::optional<SliceChart> chart;

  Vector interior;
  Box box;
  ConvexProgram program;
  std::optional<std::vector<Vector>> vertices;
};

struct BodyAccess {
  static const Body::Node& node(const Body& b) { return *b.node_; }
};

namespace {

constexpr std::size_t kMaxVertexCombinations = 200000;
constexpr int kMaxVertexDim = 6;
constexpr double kInteriorDepth = kDefaultTol;

double inf() { return std::numeric_limits<double>::infinity(); }

std::vector<double> row_major(const Matrix& m) {
  std::vector<double> out(static_cast<std::size_t>(m.size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out[i * m.cols() + j] = m(i, j);
  }
  return out;
}

ConvexProgram halfspace_program(const std::vector<Halfspace>& hs, int dim) {
  ConvexProgram p(dim);
  for (const auto& h : hs) p.linear.push_back({h.normal, h.offset});
  return p;
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    if (r > (1ULL << 40)) return r;
  }
  return r;
}

double pad(double v) { return 1e-9 * (1.0 + std::abs(v)); }

// Bounding box from linear maximization along the coordinate axes.
Box box_from_program(const ConvexProgram& program, const Vector& interior, bool* unbounded) {
  const int n = program.dim;
  Box box{Vector(n), Vector(n)};
  for (int i = 0; i < n; ++i) {
    for (double sign : {1.0, -1.0}) {
      const Vector d = sign * unit_vector(n, i);
      const LinearMaximum m = maximize_linear(program, d, interior);
      if (m.unbounded) {
        if (unbounded) *unbounded = true;
      }
      if (sign > 0) {
        box.hi[i] = m.value + pad(m.value);
      } else {
        box.lo[i] = -m.value - pad(m.value);
      }
    }
  }
  return box;
}

}  // namespace

const char* to_string(Location loc) {
  switch (loc) {
    case Location::Inside:
      return "inside";
    case Location::Boundary:
      return "boundary";
    case Location::Outside:
      return "outside";
  }
  return "?";
}

double Box::volume() const {
  double v = 1.0;
  for (Eigen::Index i = 0; i < lo.size(); ++i) v *= std::max(0.0, hi[i] - lo[i]);
  return v;
}

Box Box::hull(const Box& other) const {
  require_same_dim(lo.size(), other.lo.size(), "box hull");
  return Box{lo.cwiseMin(other.lo), hi.cwiseMax(other.hi)};
}

std::vector<Vector> enumerate_vertices(const std::vector<Halfspace>& halfspaces, int dim) {
  std::vector<Vector> out;
  const int m = static_cast<int>(halfspaces.size());
  if (m < dim) return out;
  std::vector<int> idx(dim);
  for (int i = 0; i < dim; ++i) idx[i] = i;
  Matrix a(dim, dim);
  Vector b(dim);
  for (;;) {
    for (int r = 0; r < dim; ++r) {
      a.row(r) = halfspaces[idx[r]].normal.transpose();
      b[r] = halfspaces[idx[r]].offset;
    }
    Eigen::FullPivLU<Matrix> lu(a);
    lu.setThreshold(1e-10);
    if (lu.rank() == dim) {
      const Vector x = lu.solve(b);
      bool feasible = x.allFinite();
      for (int h = 0; feasible && h < m; ++h) {
        if (halfspaces[h].slack(x) < -1e-9 * (1.0 + std::abs(halfspaces[h].offset))) feasible = false;
      }
      if (feasible) {
        const bool duplicate = std::any_of(out.begin(), out.end(), [&](const Vector& v) {
          return (v - x).cwiseAbs().maxCoeff() <= 1e-9 * (1.0 + x.cwiseAbs().maxCoeff());
        });
        if (!duplicate) out.push_back(x);
      }
    }
    int k = dim - 1;
    while (k >= 0 && idx[k] == m - dim + k) --k;
    if (k < 0) break;
    ++idx[k];
    for (int j = k + 1; j < dim; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

namespace {

std::optional<Body> make_polytope_impl(std::vector<Halfspace> hs, bool throw_on_invalid,
                                       std::shared_ptr<Body::Node>& node) {
  if (hs.empty()) throw InvalidBody("polytope needs at least one halfspace");
  const int n = hs.front().dim();
  if (n < 1) throw InvalidBody("polytope dimension must be >= 1");
  for (auto& h : hs) {
    require_same_dim(h.dim(), n, "polytope halfspace");
    h = Halfspace::from(h.normal, h.offset);
  }
  ConvexProgram program = halfspace_program(hs, n);
  const DeepestPoint deep = deepest_point(program, Vector::Zero(n));
  if (!(deep.depth > kInteriorDepth)) {
    if (throw_on_invalid) throw InvalidBody("polytope has empty interior");
    return std::nullopt;
  }
  bool unbounded = false;
  Box box = box_from_program(program, deep.point, &unbounded);
  if (unbounded) throw InvalidBody("polytope is unbounded");

  node = std::make_shared<Body::Node>();
  node->kind = BodyKind::Polytope;
  node->dim = n;
  if (n <= kMaxVertexDim &&
      binomial(static_cast<int>(hs.size()), n) <= kMaxVertexCombinations) {
    node->vertices = enumerate_vertices(hs, n);
    Box vbox{Vector::Constant(n, inf()), Vector::Constant(n, -inf())};
    for (const auto& v : *node->vertices) {
      vbox.lo = vbox.lo.cwiseMin(v);
      vbox.hi = vbox.hi.cwiseMax(v);
    }
    box = vbox;
  }
  node->halfspaces = std::move(hs);
  node->program = std::move(program);
  node->interior = deep.point;
  node->box = std::move(box);
  return std::nullopt;
}

}  // namespace

Body Body::polytope(std::vector<Halfspace> halfspaces) {
  std::shared_ptr<Node> node;
  make_polytope_impl(std::move(halfspaces), true, node);
  return Body(std::move(node));
}

Body Body::cone_spindle(int dim) {
  if (dim < 2) throw InvalidBody("cone spindle needs dimension >= 2");
  auto node = std::make_shared<Node>();
  node->kind = BodyKind::ConeSpindle;
  node->dim = dim;
  node->cone = dim;
  ConeRow row;
  row.A = Matrix::Zero(2, dim);
  row.A(0, 0) = 1.0;
  row.A(1, 1) = 1.0;
  row.q = Vector::Zero(2);
  row.c = Vector::Zero(dim);
  for (int j = 2; j < dim; ++j) row.c[j] = 1.0;
  row.e = 1.0;
  node->program = ConvexProgram(dim);
  node->program.cones.push_back(std::move(row));
  for (int j = 2; j < dim; ++j) node->program.linear.push_back({-unit_vector(dim, j), 0.0});
  node->interior = Vector::Zero(dim);
  for (int j = 2; j < dim; ++j) node->interior[j] = 1.0 / (2.0 * dim);
  node->box = Box{Vector::Zero(dim), Vector::Ones(dim)};
  node->box.lo[0] = node->box.lo[1] = -1.0;
  return Body(std::move(node));
}

Body Body::image(const Similarity& map, const Body& base) {
  require_same_dim(map.dim(), base.dim(), "image");
  if (base.kind() == BodyKind::Image) return image(compose(map, base.map()), base.base());
  auto node = std::make_shared<Node>();
  node->kind = BodyKind::Image;
  node->dim = base.dim();
  node->map = map;
  node->inverse = invert(map);
  node->affine_rows = row_major(node->inverse->rotation());
  node->children = {base};
  node->interior = map.apply(base.interior_point());
  node->program = base.program().substitute(node->inverse->scale() * node->inverse->rotation(),
                                            node->inverse->translation());
  Body out(node);
  const int n = base.dim();
  Box box{Vector(n), Vector(n)};
  for (int i = 0; i < n; ++i) {
    box.hi[i] = support(out, unit_vector(n, i)).value;
    box.lo[i] = -support(out, -unit_vector(n, i)).value;
  }
  if (!base.vertices() && base.kind() != BodyKind::ConeSpindle) {
    for (int i = 0; i < n; ++i) {
      box.hi[i] += pad(box.hi[i]);
      box.lo[i] -= pad(box.lo[i]);
    }
  }
  node->box = std::move(box);
  return out;
}

std::optional<Body> Body::try_intersection(std::vector<Body> parts, std::vector<Halfspace> halfspaces) {
  std::vector<Body> flat;
  std::vector<Halfspace> hs = std::move(halfspaces);
  for (auto& p : parts) {
    if (p.kind() == BodyKind::Intersection) {
      for (const auto& q : p.parts()) flat.push_back(q);
      hs.insert(hs.end(), p.halfspaces().begin(), p.halfspaces().end());
    } else {
      flat.push_back(std::move(p));
    }
  }
  if (flat.empty() && hs.empty()) throw InvalidBody("intersection of nothing");
  const int n = flat.empty() ? hs.front().dim() : flat.front().dim();
  for (const auto& p : flat) require_same_dim(p.dim(), n, "intersection part");
  for (auto& h : hs) {
    require_same_dim(h.dim(), n, "intersection halfspace");
    h = Halfspace::from(h.normal, h.offset);
  }
  if (flat.size() == 1 && hs.empty()) return flat.front();

  // Polyhedral conjunction: concatenated halfspaces.
  bool polyhedral = true;
  std::vector<Halfspace> all = hs;
  for (const auto& p : flat) {
    auto ph = p.polyhedral_halfspaces();
    if (!ph) {
      polyhedral = false;
      break;
    }
    all.insert(all.end(), ph->begin(), ph->end());
  }
  if (polyhedral) {
    std::shared_ptr<Node> node;
    make_polytope_impl(std::move(all), false, node);
    if (!node) return std::nullopt;
    return Body(std::move(node));
  }

  auto node = std::make_shared<Node>();
  node->kind = BodyKind::Intersection;
  node->dim = n;
  node->program = halfspace_program(hs, n);
  Vector start = Vector::Zero(n);
  for (const auto& p : flat) {
    node->program.append(p.program());
  }
  start = flat.front().interior_point();
  const DeepestPoint deep = deepest_point(node->program, start);
  if (!(deep.depth > kInteriorDepth)) return std::nullopt;
  node->halfspaces = std::move(hs);
  node->children = std::move(flat);
  node->interior = deep.point;
  node->box = box_from_program(node->program, deep.point, nullptr);
  return Body(std::move(node));
}

Body Body::intersection(std::vector<Body> parts, std::vector<Halfspace> halfspaces) {
  auto out = try_intersection(std::move(parts), std::move(halfspaces));
  if (!out) throw InvalidBody("intersection has empty interior");
  return *out;
}

std::optional<Body> Body::try_section(const SliceChart& chart, const Body& base) {
  require_same_dim(chart.ambient_dim(), base.dim(), "section");
  auto node = std::make_shared<Node>();
  node->kind = BodyKind::Section;
  node->dim = chart.chart_dim();
  node->chart = chart;
  node->affine_rows = row_major(chart.frame());
  node->children = {base};
  node->program = base.program().substitute(chart.frame(), chart.origin());
  const DeepestPoint deep = deepest_point(node->program, chart.to_chart(base.interior_point()));
  if (!(deep.depth > kInteriorDepth)) return std::nullopt;
  node->interior = deep.point;
  node->box = box_from_program(node->program, deep.point, nullptr);
  return Body(std::move(node));
}

Body Body::section(const SliceChart& chart, const Body& base) {
  auto out = try_section(chart, base);
  if (!out) throw InvalidBody("section has empty relative interior");
  return *out;
}

BodyKind Body::kind() const { return node_->kind; }
int Body::dim() const { return node_->dim; }

const std::vector<Halfspace>& Body::halfspaces() const {
  if (kind() != BodyKind::Polytope && kind() != BodyKind::Intersection) {
    throw InvalidArgument("halfspaces(): not a polytope or intersection");
  }
  return node_->halfspaces;
}

int Body::cone_dim() const {
  if (kind() != BodyKind::ConeSpindle) throw InvalidArgument("cone_dim(): not a cone spindle");
  return node_->cone;
}

const Similarity& Body::map() const {
  if (kind() != BodyKind::Image) throw InvalidArgument("map(): not an image");
  return *node_->map;
}

const Body& Body::base() const {
  if (kind() != BodyKind::Image && kind() != BodyKind::Section) {
    throw InvalidArgument("base(): not an image or section");
  }
  return node_->children.front();
}

const std::vector<Body>& Body::parts() const {
  if (kind() != BodyKind::Intersection) throw InvalidArgument("parts(): not an intersection");
  return node_->children;
}

const SliceChart& Body::chart() const {
  if (kind() != BodyKind::Section) throw InvalidArgument("chart(): not a section");
  return *node_->chart;
}

const Vector& Body::interior_point() const { return node_->interior; }
const Box& Body::bounding_box() const { return node_->box; }
const ConvexProgram& Body::program() const { return node_->program; }

const std::vector<Vector>* Body::vertices() const {
  return node_->vertices ? &*node_->vertices : nullptr;
}

std::optional<std::vector<Halfspace>> Body::polyhedral_halfspaces() const {
  switch (kind()) {
    case BodyKind::Polytope:
      return node_->halfspaces;
    case BodyKind::ConeSpindle:
      return std::nullopt;
    case BodyKind::Image: {
      auto base_hs = base().polyhedral_halfspaces();
      if (!base_hs) return std::nullopt;
      const Similarity& f = map();
      std::vector<Halfspace> out;
      out.reserve(base_hs->size());
      for (const auto& h : *base_hs) {
        Vector n = f.rotation() * h.normal;
        const double r = f.scale() * h.offset + n.dot(f.translation());
        out.push_back(Halfspace::from(n, r));
      }
      return out;
    }
    case BodyKind::Intersection: {
      std::vector<Halfspace> out = node_->halfspaces;
      for (const auto& p : node_->children) {
        auto ph = p.polyhedral_halfspaces();
        if (!ph) return std::nullopt;
        out.insert(out.end(), ph->begin(), ph->end());
      }
      return out;
    }
    case BodyKind::Section: {
      auto base_hs = base().polyhedral_halfspaces();
      if (!base_hs) return std::nullopt;
      const SliceChart& c = chart();
      std::vector<Halfspace> out;
      for (const auto& h : *base_hs) {
        Vector n = c.frame().transpose() * h.normal;
        const double r = h.offset - h.normal.dot(c.origin());
        if (n.norm() <= 1e-12) {
          if (r > 0.0) continue;
          return std::nullopt;
        }
        out.push_back(Halfspace::from(n, r));
      }
      if (out.empty()) return std::nullopt;
      return out;
    }
  }
  return std::nullopt;
}

// --- evaluation -------------------------------------------------------------

namespace {

void evaluate(const Body::Node& node, const double* const* pts, std::size_t n, double* out);

struct Workspace {
  std::vector<double> storage;
  std::vector<double*> rows;
  Workspace(std::size_t dim, std::size_t n) : storage(dim * n), rows(dim) {
    for (std::size_t j = 0; j < dim; ++j) rows[j] = storage.data() + j * n;
  }
};

}  // namespace

void Body::margins(const double* const* pts, std::size_t n, double* out) const {
  if (n > kBlockSize) throw InvalidArgument("margins: block larger than kBlockSize");
  evaluate(*node_, pts, n, out);
}

namespace {

const Body::Node& node_of(const Body& b) { return BodyAccess::node(b); }

void evaluate(const Body::Node& node, const double* const* pts, std::size_t n, double* out) {
  const kernels::KernelTable& k = kernels::active();
  const std::size_t dim = static_cast<std::size_t>(node.dim);
  switch (node.kind) {
    case BodyKind::Polytope:
      std::fill(out, out + n, inf());
      for (const auto& h : node.halfspaces) k.halfspace_min(h.normal.data(), h.offset, dim, pts, out, n);
      return;
    case BodyKind::ConeSpindle:
      k.cone_spindle(dim, pts, out, n);
      return;
    case BodyKind::Image: {
      Workspace ws(dim, n);
      const Similarity& inv = *node.inverse;
      k.affine(node.affine_rows.data(), dim, dim, inv.scale(), inv.translation().data(), pts,
               ws.rows.data(), n);
      evaluate(node_of(node.children.front()), ws.rows.data(), n, out);
      return;
    }
    case BodyKind::Section: {
      const SliceChart& c = *node.chart;
      const std::size_t amb = dim + 1;
      Workspace ws(amb, n);
      k.affine(node.affine_rows.data(), amb, dim, 1.0, c.origin().data(), pts, ws.rows.data(), n);
      evaluate(node_of(node.children.front()), ws.rows.data(), n, out);
      return;
    }
    case BodyKind::Intersection: {
      std::fill(out, out + n, inf());
      for (const auto& h : node.halfspaces) k.halfspace_min(h.normal.data(), h.offset, dim, pts, out, n);
      std::vector<double> tmp(n);
      for (const auto& part : node.children) {
        evaluate(node_of(part), pts, n, tmp.data());
        k.min_into(out, tmp.data(), n);
      }
      return;
    }
  }
}

}  // namespace

double Body::margin(const Vector& x) const {
  require_same_dim(x.size(), dim(), "margin");
  std::vector<const double*> rows(static_cast<std::size_t>(dim()));
  for (int j = 0; j < dim(); ++j) rows[j] = x.data() + j;
  double out = 0.0;
  evaluate(*node_, rows.data(), 1, &out);
  return out;
}

Location classify(double margin, double tol) {
  if (margin > tol) return Location::Inside;
  if (margin >= -tol) return Location::Boundary;
  return Location::Outside;
}

Location membership(const Body& body, const Vector& x, double tol) {
  return classify(body.margin(x), tol);
}

// --- support and radius -----------------------------------------------------

SupportResult support(const Body& body, const Vector& direction) {
  require_same_dim(direction.size(), body.dim(), "support");
  if (!(direction.norm() > 0.0)) throw InvalidArgument("support direction must be nonzero");
  const int n = body.dim();
  switch (body.kind()) {
    case BodyKind::Polytope:
      if (const auto* vs = body.vertices(); vs && !vs->empty()) {
        std::size_t best = 0;
        double value = direction.dot((*vs)[0]);
        for (std::size_t i = 1; i < vs->size(); ++i) {
          const double v = direction.dot((*vs)[i]);
          if (v > value) {
            value = v;
            best = i;
          }
        }
        return {value, (*vs)[best]};
      }
      break;
    case BodyKind::ConeSpindle: {
      const double rho = std::hypot(direction[0], direction[1]);
      SupportResult r{rho, Vector::Zero(n)};
      if (rho > 0.0) {
        r.witness[0] = direction[0] / rho;
        r.witness[1] = direction[1] / rho;
      } else {
        r.witness[0] = 1.0;
      }
      for (int j = 2; j < n; ++j) {
        if (direction[j] > r.value) {
          r.value = direction[j];
          r.witness = unit_vector(n, j);
        }
      }
      return r;
    }
    case BodyKind::Image: {
      const Similarity& f = body.map();
      const SupportResult b = support(body.base(), f.rotation().transpose() * direction);
      return {f.scale() * b.value + direction.dot(f.translation()), f.apply(b.witness)};
    }
    case BodyKind::Intersection:
    case BodyKind::Section:
      break;
  }
  const LinearMaximum m = maximize_linear(body.program(), direction, body.interior_point());
  return {m.value, m.point};
}

namespace {

double farthest_box_corner(const Box& box, const Vector& c) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    const double d = std::max(std::abs(box.lo[i] - c[i]), std::abs(box.hi[i] - c[i]));
    s += d * d;
  }
  return std::sqrt(s);
}

}  // namespace

double bounding_radius_about(const Body& body, const Vector& center) {
  require_same_dim(center.size(), body.dim(), "bounding_radius_about");
  const int n = body.dim();
  switch (body.kind()) {
    case BodyKind::Polytope:
      if (const auto* vs = body.vertices(); vs && !vs->empty()) {
        double r = 0.0;
        for (const auto& v : *vs) r = std::max(r, (v - center).norm());
        return r;
      }
      return farthest_box_corner(body.bounding_box(), center);
    case BodyKind::ConeSpindle: {
      const double rho = std::hypot(center[0], center[1]);
      double tail = 0.0;
      for (int j = 2; j < n; ++j) tail += center[j] * center[j];
      double r2 = (1.0 + rho) * (1.0 + rho) + tail;
      for (int j = 2; j < n; ++j) r2 = std::max(r2, (unit_vector(n, j) - center).squaredNorm());
      return std::sqrt(r2);
    }
    case BodyKind::Image: {
      const Similarity& f = body.map();
      return f.scale() * bounding_radius_about(body.base(), invert(f).apply(center));
    }
    case BodyKind::Intersection: {
      double r = farthest_box_corner(body.bounding_box(), center);
      for (const auto& p : body.parts()) r = std::min(r, bounding_radius_about(p, center));
      return r;
    }
    case BodyKind::Section: {
      const double r = bounding_radius_about(body.base(), body.chart().to_ambient(center));
      return std::min(r, farthest_box_corner(body.bounding_box(), center));
    }
  }
  return farthest_box_corner(body.bounding_box(), center);
}

// --- structure --------------------------------------------------------------

namespace {

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol * (1.0 + std::abs(a)); }

bool near(const Matrix& a, const Matrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return a.size() == 0 || (a - b).cwiseAbs().maxCoeff() <= tol * (1.0 + a.cwiseAbs().maxCoeff());
}

bool same_similarity(const Similarity& f, const Similarity& g, double tol) {
  return f.dim() == g.dim() && near(f.scale(), g.scale(), tol) &&
         near(f.rotation(), g.rotation(), tol) && near(f.translation(), g.translation(), tol);
}

bool same_halfspaces(const std::vector<Halfspace>& a, const std::vector<Halfspace>& b, double tol) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!near(a[i].normal, b[i].normal, tol) || !near(a[i].offset, b[i].offset, tol)) return false;
  }
  return true;
}

}  // namespace

bool Body::structurally_equal(const Body& other, double tol) const {
  if (node_ == other.node_) return true;
  if (kind() != other.kind() || dim() != other.dim()) return false;
  switch (kind()) {
    case BodyKind::Polytope:
      return same_halfspaces(halfspaces(), other.halfspaces(), tol);
    case BodyKind::ConeSpindle:
      return cone_dim() == other.cone_dim();
    case BodyKind::Image:
      return same_similarity(map(), other.map(), tol) &&
             base().structurally_equal(other.base(), tol);
    case BodyKind::Intersection: {
      if (!same_halfspaces(halfspaces(), other.halfspaces(), tol)) return false;
      if (parts().size() != other.parts().size()) return false;
      for (std::size_t i = 0; i < parts().size(); ++i) {
        if (!parts()[i].structurally_equal(other.parts()[i], tol)) return false;
      }
      return true;
    }
    case BodyKind::Section: {
      const SliceChart& a = chart();
      const SliceChart& b = other.chart();
      return near(a.hyperplane().normal, b.hyperplane().normal, tol) &&
             near(a.hyperplane().offset, b.hyperplane().offset, tol) &&
             near(a.origin(), b.origin(), tol) && near(a.frame(), b.frame(), tol) &&
             base().structurally_equal(other.base(), tol);
    }
  }
  return false;
}

namespace {

// Splits b as f(core) with f = identity when b is not an image.
std::pair<Similarity, Body> as_image(const Body& b) {
  if (b.kind() == BodyKind::Image) return {b.map(), b.base()};
  return {Similarity::identity(b.dim()), b};
}

}  // namespace

bool certainly_contains(const Body& outer, const Body& inner) {
  if (outer.dim() != inner.dim()) return false;
  if (outer.structurally_equal(inner)) return true;
  auto [a, core_a] = as_image(outer);
  auto [b, core_b] = as_image(inner);
  if (!core_a.structurally_equal(core_b)) return false;
  // inner = b(C), outer = a(C): inner within outer iff k(C) within C, k = a^-1 b.
  const Similarity k = compose(invert(a), b);
  if (!k.is_homothety(1e-9)) return false;
  if (k.scale() > 1.0 + 1e-12) return false;
  if (k.translation().norm() <= 1e-12 && std::abs(k.scale() - 1.0) <= 1e-12) return true;
  if (std::abs(k.scale() - 1.0) <= 1e-12) return false;
  const Vector p = fixed_point(k);
  return membership(core_a, p) != Location::Outside;
}


}  // namespace simtile
