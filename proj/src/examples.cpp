#include "simtile/examples.hpp"

#include <cmath>
#include <numbers>

#include "simtile/errors.hpp"

namespace simtile {

namespace {

// Axis-aligned box [lo, hi] as a polytope.
Body box_polytope(const Vector& lo, const Vector& hi) {
  const int n = static_cast<int>(lo.size());
  std::vector<Halfspace> hs;
  for (int j = 0; j < n; ++j) {
    hs.push_back(Halfspace::from(unit_vector(n, j), hi[j]));
    hs.push_back(Halfspace::from(-unit_vector(n, j), -lo[j]));
  }
  return Body::polytope(std::move(hs));
}

// Orthant-cell tiling of the unit cube; cells listed by bit index.
Tiling cube_cells(int n, const std::vector<int>& tagged) {
  const Body K = unit_cube(n);
  std::vector<Tile> tiles;
  for (int c = 0; c < (1 << n); ++c) {
    Vector corner(n);
    for (int j = 0; j < n; ++j) corner[j] = (c >> j) & 1;
    bool is_tagged = false;
    for (int t : tagged) is_tagged = is_tagged || t == c;
    if (is_tagged) {
      const Similarity f = Similarity::homothety(0.5, corner);
      tiles.push_back({Body::image(f, K), f});
    } else {
      const Vector lo = 0.5 * corner;
      tiles.push_back({box_polytope(lo, lo + Vector::Constant(n, 0.5)), std::nullopt});
    }
  }
  return Tiling(K, std::move(tiles));
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

Body unit_cube(int n) {
  if (n < 1) throw InvalidArgument("unit_cube: dimension must be >= 1");
  return box_polytope(Vector::Zero(n), Vector::Ones(n));
}

Tiling cone_spindle_tiling(int n) {
  if (n < 3) throw InvalidArgument("cone_spindle_tiling: n must be >= 3");
  const Body K = Body::cone_spindle(n);
  std::vector<Tile> tiles;
  std::vector<Halfspace> caps;
  for (int i = 2; i < n; ++i) {
    const Similarity f = Similarity::homothety(0.5, unit_vector(n, i));
    tiles.push_back({Body::image(f, K), f});
    caps.push_back(Halfspace::from(unit_vector(n, i), 0.5));
  }
  tiles.push_back({Body::intersection({K}, std::move(caps)), std::nullopt});
  return Tiling(K, std::move(tiles));
}

std::vector<Tiling> designated_tilings(const Tiling& t) {
  std::vector<Tiling> out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!t.tiles()[i].tagged()) continue;
    std::vector<Tile> tiles = t.tiles();
    for (std::size_t j = 0; j < tiles.size(); ++j) {
      if (j != i) tiles[j].similarity_to_ambient.reset();
    }
    out.emplace_back(t.ambient(), std::move(tiles));
  }
  return out;
}

Tiling quarter_square_tiling(int corner) {
  if (corner < 0 || corner > 3) throw InvalidArgument("quarter_square_tiling: corner must be 0..3");
  return cube_cells(2, {corner});
}

Tiling rotated_similar_tile_fixture() {
  const Body K = unit_cube(2);
  Matrix quarter_turn(2, 2);
  quarter_turn << 0.0, -1.0, 1.0, 0.0;
  Vector shift(2);
  shift << 0.5, 0.0;
  const Similarity f(0.5, quarter_turn, shift);
  Tiling base = cube_cells(2, {});
  std::vector<Tile> tiles = base.tiles();
  tiles[0] = {Body::image(f, K), f};
  return Tiling(K, std::move(tiles));
}

Tiling cube_octant_tiling() { return cube_cells(3, {0, 7}); }

std::vector<ExampleSpec> example_catalog() {
  std::vector<ExampleSpec> out;
  for (int n = 3; n <= 6; ++n) {
    const double vol = 2.0 * std::numbers::pi / factorial(n);
    const double scale = std::pow(0.5, n);
    std::vector<double> volumes(static_cast<std::size_t>(n - 2), vol * scale);
    volumes.push_back(vol * (1.0 - (n - 2) * scale));
    out.push_back({"cone-spindle-" + std::to_string(n), n,
                   {static_cast<std::size_t>(n - 1), n - 3, volumes},
                   "volume 2 pi / n! with ratio-1/2 images; tip points e_3..e_n"});
  }
  for (int c = 0; c < 4; ++c) {
    out.push_back({"quarter-square-" + std::to_string(c), 2,
                   {4, 0, std::vector<double>(4, 0.25)},
                   "exact partition of the unit square"});
  }
  out.push_back({"rotated-fixture", 2, {4, 0, std::vector<double>(4, 0.25)},
                 "exact partition; tag fixed point (2/5, 1/5)"});
  out.push_back({"cube-octants", 3, {8, 1, std::vector<double>(8, 0.125)},
                 "exact partition; tags fix opposite corners"});
  return out;
}

Tiling build_example(const std::string& name) {
  const std::string cone = "cone-spindle-";
  const std::string quarter = "quarter-square-";
  if (name.rfind(cone, 0) == 0) return cone_spindle_tiling(std::stoi(name.substr(cone.size())));
  if (name.rfind(quarter, 0) == 0) return quarter_square_tiling(std::stoi(name.substr(quarter.size())));
  if (name == "rotated-fixture") return rotated_similar_tile_fixture();
  if (name == "cube-octants") return cube_octant_tiling();
  throw InvalidArgument("unknown example '" + name + "'");
}

}  // namespace simtile
