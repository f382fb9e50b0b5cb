#include "simtile/slice.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "simtile/errors.hpp"
#include "simtile/random.hpp"
#include "simtile/sampling.hpp"

namespace simtile {

namespace {

constexpr double kOnPlaneTol = 1e-9;

std::optional<Body> slice_polyhedral(const std::vector<Halfspace>& hs, const SliceChart& chart) {
  const Matrix& F = chart.frame();
  std::vector<Halfspace> rows;
  rows.reserve(hs.size());
  for (const auto& h : hs) {
    const Vector a = F.transpose() * h.normal;
    const double b = h.offset - h.normal.dot(chart.origin());
    if (a.norm() < 1e-12) {
      // Parallel to H: either redundant or the slice is empty.
      if (b <= kOnPlaneTol) return std::nullopt;
      continue;
    }
    rows.push_back(Halfspace::from(a, b));
  }
  if (rows.empty()) return std::nullopt;
  try {
    return Body::polytope(std::move(rows));
  } catch (const InvalidBody&) {
    return std::nullopt;
  }
}

}  // namespace

std::optional<Body> slice_body(const Body& body, const SliceChart& chart) {
  require_same_dim(chart.ambient_dim(), body.dim(), "slice_body");
  if (auto hs = body.polyhedral_halfspaces()) return slice_polyhedral(*hs, chart);
  return Body::try_section(chart, body);
}

SliceResult slice_tiling(const Tiling& t, const Hyperplane& h, std::int64_t samples, std::uint64_t seed) {
  const Body& K = t.ambient();
  const int n = K.dim();
  if (n < 2) throw InvalidArgument("slice_tiling: dimension must be >= 2");
  require_same_dim(h.dim(), n, "slice_tiling hyperplane");
  const Hyperplane plane = Hyperplane::from(h.normal, h.offset);
  const SliceChart chart(plane, K.interior_point());

  const auto ambient = slice_body(K, chart);
  if (!ambient) {
    const double hi = support(K, plane.normal).value;
    const double lo = -support(K, -plane.normal).value;
    const double pad = kDefaultTol * (1.0 + std::abs(plane.offset));
    if (plane.offset > hi + pad || plane.offset < lo - pad) throw EmptySlice("hyperplane misses the body");
    throw DegenerateSlice("hyperplane only touches the body");
  }

  const CounterRng rng(seed);
  std::vector<Tile> tiles;
  std::vector<std::size_t> sources;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const Tile& tile = t.tiles()[i];
    std::optional<Body> piece;
    std::optional<Similarity> tag;
    if (tile.tagged() && tile.similarity_to_ambient->is_homothety(1e-12)) {
      const Similarity& f = *tile.similarity_to_ambient;
      const Vector p = fixed_point(f);
      if (std::abs(plane.signed_distance(p)) <= kOnPlaneTol) {
        tag = Similarity::homothety(f.scale(), chart.to_chart(p));
        piece = Body::image(*tag, *ambient);
      }
    }
    if (!piece) piece = slice_body(tile.body, chart);
    if (!piece) continue;
    // Confirm a relative-interior point inside the slice of K as well.
    bool inside = membership(*ambient, piece->interior_point()) != Location::Outside;
    const Box& box = piece->bounding_box();
    for (std::int64_t s = 0; !inside && s < samples; ++s) {
      Vector y(box.dim());
      for (int j = 0; j < box.dim(); ++j) {
        y[j] = box.lo[j] + (box.hi[j] - box.lo[j]) * rng.uniform(i * 1000003ULL + s, j);
      }
      inside = membership(*piece, y) == Location::Inside && membership(*ambient, y) != Location::Outside;
    }
    if (!inside) continue;
    tiles.push_back({std::move(*piece), tag});
    sources.push_back(i);
  }
  // H lies along a separating hyperplane: no tile meets it in its interior
  // and the slice of K is only covered in the limit, so report {H cap K}.
  if (tiles.empty()) {
    tiles.push_back({*ambient, std::nullopt});
    sources.clear();
  }
  Tiling induced(*ambient, std::move(tiles));
  const bool proper = induced.proper() && sources.size() == induced.size();
  return SliceResult{chart, std::move(induced), std::move(sources), proper};
}

std::vector<CloudPoint> slice_cloud(const Tiling& slice, int resolution, std::uint64_t seed) {
  if (resolution < 1) throw InvalidArgument("slice_cloud: resolution must be >= 1");
  const int d = slice.dim();
  std::vector<Vector> dirs;
  if (d == 1) {
    dirs = {Vector::Ones(1), -Vector::Ones(1)};
  } else {
    dirs = sample_directions(d, resolution, seed);
  }
  std::vector<CloudPoint> cloud;
  for (std::size_t i = 0; i < slice.size(); ++i) {
    const Body& body = slice.tiles()[i].body;
    const Vector& c = body.interior_point();
    const Box& box = body.bounding_box();
    const double reach = 2.0 * (box.hi - box.lo).norm() + 1.0;
    for (const auto& u : dirs) {
      double lo = 0.0;
      double hi = reach;
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        (membership(body, c + mid * u) == Location::Outside ? hi : lo) = mid;
      }
      cloud.push_back({i, c + lo * u});
    }
  }
  return cloud;
}

void write_cloud_csv(std::ostream& out, const std::vector<CloudPoint>& cloud, int dim) {
  out << "tile";
  for (int j = 0; j < dim; ++j) out << ",c" << j;
  out << "\n";
  char buf[64];
  for (const auto& p : cloud) {
    out << p.tile;
    for (int j = 0; j < dim; ++j) {
      std::snprintf(buf, sizeof buf, ",%.17g", p.point[j]);
      out << buf;
    }
    out << "\n";
  }
}

}  // namespace simtile
