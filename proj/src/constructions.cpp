#include "simtile/constructions.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "simtile/errors.hpp"
#include "simtile/random.hpp"
#include "simtile/sampling.hpp"

namespace simtile {

namespace {

constexpr double kAmbientMatchTol = 1e-9;
constexpr double kHomothetyTol = 1e-8;

void require_same_ambient(const Tiling& a, const Tiling& b, const char* what) {
  require_same_dim(a.dim(), b.dim(), what);
  if (!a.ambient().structurally_equal(b.ambient(), kAmbientMatchTol)) {
    throw InvalidArgument(std::string(what) + ": tilings have different ambient bodies");
  }
}

const Similarity& tag_of(const Tiling& t, std::size_t index) {
  if (index >= t.size()) throw InvalidArgument("tile index " + std::to_string(index) + " out of range");
  const Tile& tile = t.tiles()[index];
  if (!tile.tagged()) throw UntaggedTile("tile " + std::to_string(index) + " carries no similarity");
  return *tile.similarity_to_ambient;
}

std::pair<Similarity, Body> as_image(const Body& b) {
  if (b.kind() == BodyKind::Image) return {b.map(), b.base()};
  return {Similarity::identity(b.dim()), b};
}

// Similarity carrying `owner` onto `tile`, when both are images of one core body.
std::optional<Similarity> tag_relative(const Body& tile, const Body& owner) {
  auto [p, core_p] = as_image(tile);
  auto [q, core_q] = as_image(owner);
  if (!core_p.structurally_equal(core_q, kAmbientMatchTol)) return std::nullopt;
  Similarity sigma = compose(p, invert(q));
  if (!(sigma.scale() < 1.0)) return std::nullopt;
  return sigma;
}

// Interior-point confirmation for a meet piece: the phase-one deepest point
// first, then up to `budget` uniform samples in the piece's box.
bool has_common_interior(const Body& piece, const Body& p, const Body& q, std::int64_t budget,
                         const CounterRng& rng, std::uint64_t stream) {
  auto inside_both = [&](const Vector& x) {
    return membership(p, x) == Location::Inside && membership(q, x) == Location::Inside;
  };
  if (inside_both(piece.interior_point())) return true;
  const Box& box = piece.bounding_box();
  for (std::int64_t s = 0; s < budget; ++s) {
    Vector x(box.dim());
    for (int j = 0; j < box.dim(); ++j) {
      x[j] = box.lo[j] + (box.hi[j] - box.lo[j]) * rng.uniform(stream * 1000003ULL + s, j);
    }
    if (inside_both(x)) return true;
  }
  return false;
}

std::optional<Body> intersect_piece(const Body& p, const Body& q, std::int64_t budget,
                                    const CounterRng& rng, std::uint64_t stream) {
  if (certainly_contains(p, q)) return q;
  if (certainly_contains(q, p)) return p;
  auto piece = Body::try_intersection({p, q});
  if (!piece) return std::nullopt;
  if (!has_common_interior(*piece, p, q, budget, rng, stream)) return std::nullopt;
  return piece;
}

}  // namespace

Tiling transform_tiling(const Similarity& g, const Tiling& t) {
  require_same_dim(g.dim(), t.dim(), "transform_tiling");
  const Similarity g_inv = invert(g);
  std::vector<Tile> tiles;
  tiles.reserve(t.size());
  for (const auto& tile : t.tiles()) {
    Tile out{Body::image(g, tile.body), std::nullopt};
    if (tile.tagged()) out.similarity_to_ambient = compose(g, compose(*tile.similarity_to_ambient, g_inv));
    tiles.push_back(std::move(out));
  }
  return Tiling(Body::image(g, t.ambient()), std::move(tiles));
}

Tiling substitute_tiling(const Tiling& outer, std::size_t index, const Tiling& inner) {
  const Similarity f = tag_of(outer, index);
  require_same_ambient(outer, inner, "substitute_tiling");
  std::vector<Tile> tiles;
  tiles.reserve(outer.size() + inner.size() - 1);
  for (std::size_t i = 0; i < index; ++i) tiles.push_back(outer.tiles()[i]);
  for (const auto& tile : inner.tiles()) {
    Tile out{Body::image(f, tile.body), std::nullopt};
    if (tile.tagged()) out.similarity_to_ambient = compose(f, *tile.similarity_to_ambient);
    tiles.push_back(std::move(out));
  }
  for (std::size_t i = index + 1; i < outer.size(); ++i) tiles.push_back(outer.tiles()[i]);
  return Tiling(outer.ambient(), std::move(tiles));
}

Tiling iterate_tiling(const Tiling& t, std::size_t index) { return substitute_tiling(t, index, t); }

ChainRefinement refine_along_chain(const Tiling& t, std::size_t index, int depth) {
  if (depth < 0) throw InvalidArgument("refine_along_chain: depth must be >= 0");
  tag_of(t, index);
  ChainRefinement out{t, index};
  for (int k = 0; k < depth; ++k) {
    out.tiling = substitute_tiling(out.tiling, out.tile_index, t);
    out.tile_index += index;
  }
  return out;
}

Tiling meet_tilings(const Tiling& a, const Tiling& b, std::int64_t interior_samples, std::uint64_t seed) {
  require_same_dim(a.dim(), b.dim(), "meet_tilings");
  const Body& A = a.ambient();
  const Body& B = b.ambient();
  std::optional<Body> ambient;
  if (certainly_contains(A, B)) {
    ambient = B;
  } else if (certainly_contains(B, A)) {
    ambient = A;
  } else {
    ambient = Body::try_intersection({A, B});
    if (!ambient) throw EmptyIntersection("ambient bodies have no common interior");
  }
  const bool ambient_is_a = ambient->structurally_equal(A);
  const bool ambient_is_b = ambient->structurally_equal(B);
  if (b.is_trivial() && ambient_is_a) return Tiling(A, a.tiles());
  if (a.is_trivial() && ambient_is_b) return Tiling(B, b.tiles());

  const CounterRng rng(seed);
  std::uint64_t stream = 0;
  std::vector<Tile> tiles;
  for (const auto& p : a.tiles()) {
    for (const auto& q : b.tiles()) {
      ++stream;
      if (b.is_trivial() && ambient_is_b && certainly_contains(B, p.body)) {
        tiles.push_back({p.body, tag_relative(p.body, B)});
        continue;
      }
      if (a.is_trivial() && ambient_is_a && certainly_contains(A, q.body)) {
        tiles.push_back({q.body, tag_relative(q.body, A)});
        continue;
      }
      if (auto piece = intersect_piece(p.body, q.body, interior_samples, rng, stream)) {
        tiles.push_back({*piece, std::nullopt});
      }
    }
  }
  if (tiles.empty()) throw EmptyIntersection("no tile pair has a common interior");
  return Tiling(*ambient, std::move(tiles));
}

int affine_dimension(const std::vector<Vector>& points) {
  if (points.size() <= 1) return 0;
  const Eigen::Index n = points.front().size();
  Matrix diffs(n, static_cast<Eigen::Index>(points.size() - 1));
  for (std::size_t i = 1; i < points.size(); ++i) {
    require_same_dim(points[i].size(), n, "affine_dimension");
    diffs.col(static_cast<Eigen::Index>(i - 1)) = points[i] - points[0];
  }
  const Vector sv = Eigen::JacobiSVD<Matrix>(diffs).singularValues();
  const double scale = std::max(1.0, sv.size() > 0 ? sv[0] : 0.0);
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) rank += sv[i] > 1e-8 * scale;
  return rank;
}

TipSimplex tip_simplex(const std::vector<Tiling>& tilings, const std::vector<std::size_t>& tile_indices) {
  if (tilings.empty()) throw InvalidArgument("tip_simplex: no tilings");
  if (tilings.size() != tile_indices.size()) {
    throw InvalidArgument("tip_simplex: one tile index per tiling required");
  }
  const int n = tilings.front().dim();
  TipSimplex out;
  for (std::size_t i = 0; i < tilings.size(); ++i) {
    require_same_dim(tilings[i].dim(), n, "tip_simplex");
    out.points.push_back(fixed_point(tag_of(tilings[i], tile_indices[i])));
  }
  out.affine_dim = affine_dimension(out.points);
  if (static_cast<int>(out.points.size()) == n - 1 && out.affine_dim == n - 2) out.nondegenerate_for = n;
  return out;
}

TipSimplex tip_simplex(const std::vector<Tiling>& tilings) {
  std::vector<std::size_t> indices;
  indices.reserve(tilings.size());
  for (std::size_t i = 0; i < tilings.size(); ++i) {
    auto idx = tilings[i].first_tagged();
    if (!idx) throw UntaggedTiling("tiling " + std::to_string(i) + " has no tagged tile");
    indices.push_back(*idx);
  }
  return tip_simplex(tilings, indices);
}

// --- normalization ----------------------------------------------------------

namespace {

// Largest radius (by halving then bisection) at which every probe of
// B_r(x_L) lying in K also lies in L.
double search_eps(const Body& K, const Body& L, const Vector& x_l, const EpsSearch& search) {
  if (!(search.eps_max > 0.0) || search.probes < 1) throw InvalidArgument("bad eps search parameters");
  const int n = K.dim();
  const std::vector<Vector> dirs = sample_directions(n, search.probes, search.seed);
  const CounterRng rng(search.seed ^ 0x5bd1e995ULL);
  std::vector<double> radial(dirs.size());
  for (std::size_t k = 0; k < dirs.size(); ++k) {
    // Even probes sit on the sphere, odd ones fill the ball.
    radial[k] = k % 2 == 0 ? 1.0 : std::pow(rng.uniform(k, 0), 1.0 / n);
  }
  auto agrees = [&](double r) {
    for (std::size_t k = 0; k < dirs.size(); ++k) {
      const Vector x = x_l + (r * radial[k]) * dirs[k];
      if (membership(K, x) != Location::Outside && membership(L, x) == Location::Outside) return false;
    }
    return true;
  };
  if (agrees(search.eps_max)) return search.eps_max;
  // Below a few thousand tolerances every probe classifies as Boundary in
  // both bodies and agreement carries no information.
  const double r_min = 1e4 * kDefaultTol * (1.0 + x_l.norm());
  double hi = search.eps_max;
  double lo = hi * 0.5;
  bool found = false;
  while (lo >= r_min) {
    if (agrees(lo)) {
      found = true;
      break;
    }
    hi = lo;
    lo *= 0.5;
  }
  if (!found) throw EpsNotFound("tile does not agree with the ambient near its fixed point");
  for (int i = 0; i < 40; ++i) {
    const double mid = 0.5 * (lo + hi);
    (agrees(mid) ? lo : hi) = mid;
  }
  return lo;
}

std::optional<std::size_t> find_tag_fixing(const Tiling& t, const Vector& point, double tol) {
  for (std::size_t i = 0; i < t.size(); ++i) {
    const auto& tag = t.tiles()[i].similarity_to_ambient;
    if (!tag || !tag->is_homothety(kHomothetyTol)) continue;
    if ((fixed_point(*tag) - point).norm() <= tol) return i;
  }
  return std::nullopt;
}

}  // namespace

NormalizeResult normalize_to_homothety(const Tiling& t, std::size_t tile_index, const EpsSearch& search,
                                       double period_delta, int period_budget) {
  const Similarity f = tag_of(t, tile_index);
  const double lambda = f.scale();
  if (!(lambda < 1.0)) throw PreconditionViolation("normalize: similarity ratio must be < 1");
  const Body& K = t.ambient();
  const Vector x_l = fixed_point(f);
  const Location where = membership(K, x_l);
  if (where == Location::Outside) throw PreconditionViolation("normalize: fixed point lies outside K");

  const double eps = search_eps(K, t.tiles()[tile_index].body, x_l, search);
  const double radius = bounding_radius_about(K, x_l);
  const double stretch = radius / eps;
  const int period = power_near_identity(f.rotation(), period_delta, period_budget);

  int depth = period;
  while (!(std::pow(lambda, depth) < eps && stretch * std::pow(lambda, depth) < 1.0)) {
    depth += period;
    if (depth > 100000) throw Error("normalize: no admissible iteration depth");
  }
  const ChainRefinement chain = refine_along_chain(t, tile_index, depth - 1);
  const Similarity& deepest = *chain.tiling.tiles()[chain.tile_index].similarity_to_ambient;
  // G = stretch * M^-d about x_L; G o f^d is then a homothety of ratio stretch * lambda^d.
  const Similarity G = Similarity::about(stretch, deepest.rotation().transpose(), x_l);
  Tiling out = meet_tilings(transform_tiling(G, chain.tiling), Tiling::trivial(K), search.probes, search.seed);

  const auto index = find_tag_fixing(out, x_l, 1e-7);
  if (!index || !out.ambient().structurally_equal(K)) {
    throw Error("normalize: stretched tiling is not certified to cover K (rotation period inexact)");
  }
  NormalizeResult r{std::move(out), *index, eps, radius, stretch, depth, period, where == Location::Inside};
  return r;
}

// --- fixed-point relocation -------------------------------------------------

double distance_to_hull(const std::vector<Vector>& points, const Vector& x) {
  if (points.empty()) throw InvalidArgument("distance_to_hull: no points");
  if (points.size() > 20) throw InvalidArgument("distance_to_hull: at most 20 points supported");
  const int n = static_cast<int>(x.size());
  const std::size_t k = points.size();
  double best = std::numeric_limits<double>::infinity();
  for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
    const int count = __builtin_popcount(mask);
    if (count > n + 1) continue;
    std::vector<const Vector*> face;
    for (std::size_t i = 0; i < k; ++i) {
      if (mask & (1u << i)) face.push_back(&points[i]);
    }
    const Vector& p0 = *face.front();
    Vector weights = Vector::Ones(1);
    Vector closest = p0;
    if (count > 1) {
      Matrix d(n, count - 1);
      for (int j = 1; j < count; ++j) d.col(j - 1) = *face[j] - p0;
      const Vector mu = d.completeOrthogonalDecomposition().solve(x - p0);
      weights.resize(count);
      weights[0] = 1.0 - mu.sum();
      weights.tail(count - 1) = mu;
      closest = p0 + d * mu;
    }
    if (weights.minCoeff() < -1e-12) continue;
    best = std::min(best, (closest - x).norm());
  }
  return best;
}

namespace {

struct Anchor {
  const Tiling* tiling;
  std::size_t index;
  Similarity tag;
  Vector point;
};

struct State {
  Tiling tiling;
  std::size_t index;
  Similarity tag;
  Vector point;
};

// Farthest point of K on the ray from `from` through `through` (a point of K).
Vector ray_exit(const Body& K, const Vector& from, const Vector& through) {
  const Vector u = through - from;
  double lo = 1.0;
  double hi = 2.0;
  for (int i = 0; i < 80 && membership(K, from + hi * u) != Location::Outside; ++i) {
    lo = hi;
    hi *= 2.0;
  }
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    (membership(K, from + mid * u) != Location::Outside ? lo : hi) = mid;
  }
  return from + lo * u;
}

// The correcting homothety H about a point c of K beyond the current fixed
// point, chosen so that H maps g(target) to target; then H o g fixes target.
std::optional<MoveResult> try_correction(const State& s, const Body& K, const Vector& target, double eps,
                                         int steps, std::int64_t interior_samples) {
  const double dist = (s.point - target).norm();
  if (!(dist > 0.0)) return std::nullopt;
  const Vector c = ray_exit(K, target, s.point);
  if ((c - s.point).norm() <= 1e-12 * (1.0 + s.point.norm())) return std::nullopt;
  const Vector image = s.tag.apply(target);
  const double rho = (target - c).norm() / (image - c).norm();
  // Within reach: the corrected ratio keeps half of the contraction margin.
  const double lambda = s.tag.scale();
  if (!(rho * lambda <= 0.5 * (1.0 + lambda))) return std::nullopt;
  const Similarity H = Similarity::homothety(rho, c);
  Tiling out = meet_tilings(transform_tiling(H, s.tiling), Tiling::trivial(K), interior_samples, 0);
  if (!out.ambient().structurally_equal(K)) return std::nullopt;
  const auto index = find_tag_fixing(out, target, eps);
  if (!index) return std::nullopt;
  Vector fp = fixed_point(*out.tiles()[*index].similarity_to_ambient);
  return MoveResult{std::move(out), *index, std::move(fp), steps, true};
}

}  // namespace

MoveResult move_fixed_point(const std::vector<Tiling>& tilings, const Vector& target, double eps,
                            int max_steps, std::int64_t interior_samples) {
  if (tilings.empty()) throw InvalidArgument("move_fixed_point: no tilings");
  if (!(eps > 0.0)) throw InvalidArgument("move_fixed_point: eps must be positive");
  const Body& K = tilings.front().ambient();
  require_same_dim(target.size(), K.dim(), "move_fixed_point target");
  std::vector<Anchor> anchors;
  std::vector<Vector> points;
  for (std::size_t i = 0; i < tilings.size(); ++i) {
    require_same_ambient(tilings.front(), tilings[i], "move_fixed_point");
    const auto idx = tilings[i].first_tagged();
    if (!idx) throw UntaggedTiling("tiling " + std::to_string(i) + " has no tagged tile");
    const Similarity& tag = *tilings[i].tiles()[*idx].similarity_to_ambient;
    if (!tag.is_homothety(kHomothetyTol)) {
      throw PreconditionViolation("tiling " + std::to_string(i) +
                                  ": tag is not a homothety (normalize it first)");
    }
    anchors.push_back({&tilings[i], *idx, tag, fixed_point(tag)});
    points.push_back(anchors.back().point);
  }
  if (distance_to_hull(points, target) > eps) {
    throw TargetOutsideHull("target is not in the convex hull of the fixed points");
  }

  std::size_t start = 0;
  for (std::size_t j = 1; j < anchors.size(); ++j) {
    if ((anchors[j].point - target).norm() < (anchors[start].point - target).norm()) start = j;
  }
  const Anchor& a0 = anchors[start];
  if ((a0.point - target).norm() < eps) return MoveResult{*a0.tiling, a0.index, a0.point, 0, false};

  State s{*a0.tiling, a0.index, a0.tag, a0.point};
  for (int steps = 0;; ++steps) {
    if (auto corrected = try_correction(s, K, target, eps, steps, interior_samples)) return *corrected;
    if (steps >= max_steps) break;

    // Either T_cur + f_cur(T_j) (tag f_cur o f_j) or T_j + f_j(T_cur) (tag f_j o f_cur).
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_j = 0;
    bool best_append = true;
    for (std::size_t j = 0; j < anchors.size(); ++j) {
      for (bool append : {true, false}) {
        const Similarity tag = append ? compose(s.tag, anchors[j].tag) : compose(anchors[j].tag, s.tag);
        const double d = (fixed_point(tag) - target).norm();
        if (d < best) {
          best = d;
          best_j = j;
          best_append = append;
        }
      }
    }
    const Anchor& a = anchors[best_j];
    if (best_append) {
      s.tiling = substitute_tiling(s.tiling, s.index, *a.tiling);
      s.index += a.index;
    } else {
      s.tiling = substitute_tiling(*a.tiling, a.index, s.tiling);
      s.index = a.index + s.index;
    }
    s.tag = *s.tiling.tiles()[s.index].similarity_to_ambient;
    s.point = fixed_point(s.tag);
    if ((s.point - target).norm() < eps) return MoveResult{s.tiling, s.index, s.point, steps + 1, false};
  }
  throw StepBudgetExceeded("fixed point not within eps of target after " + std::to_string(max_steps) +
                           " compositions");
}

}  // namespace simtile
