#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "simtile/tiling.hpp"

namespace simtile {

// g(T): ambient g(K), tiles g(P), tags conjugated to g f g^-1 so they still
// map the new ambient onto each tile.
Tiling transform_tiling(const Similarity& g, const Tiling& t);

// Replaces tile `index` of `outer` (tagged with f) by f applied to every tile
// of `inner`; each new tile carries compose(f, tag) when its source is tagged.
// Both tilings must share the ambient body.
Tiling substitute_tiling(const Tiling& outer, std::size_t index, const Tiling& inner);

// f_L(T) + T: substitute_tiling(t, index, t). Tile count 2|t| - 1; the image
// of tile `index` itself lands at position 2 * index.
Tiling iterate_tiling(const Tiling& t, std::size_t index);

struct ChainRefinement {
  Tiling tiling;
  std::size_t tile_index;  // the tile tagged with f^(depth + 1)
};

// Repeatedly substitutes the base tiling into the deepest tile of the
// f-chain: after `depth` steps f^(depth+1)(K) is a tile and the count is
// |t| + depth (|t| - 1).
ChainRefinement refine_along_chain(const Tiling& t, std::size_t index, int depth);

// T1 * T2 = {P cap Q}. Pieces without interior are dropped; the ambient is
// the intersection of the ambients (or the smaller one when containment is
// structurally certain). Tags survive only when one factor is the trivial
// tiling {B} of the resulting ambient B and the tile is certainly inside B.
Tiling meet_tilings(const Tiling& a, const Tiling& b, std::int64_t interior_samples = 1000,
                    std::uint64_t seed = 0);

struct TipSimplex {
  std::vector<Vector> points;
  int affine_dim = 0;
  // Ambient dimension n when there are n - 1 points spanning an (n-2)-simplex.
  std::optional<int> nondegenerate_for;
};

// Affine dimension of a point set: numeric rank of p_i - p_0 at 1e-8 * scale.
int affine_dimension(const std::vector<Vector>& points);

// Uses the first tagged tile of each tiling.
TipSimplex tip_simplex(const std::vector<Tiling>& tilings);
// Uses tiles[tile_indices[i]] of tilings[i].
TipSimplex tip_simplex(const std::vector<Tiling>& tilings, const std::vector<std::size_t>& tile_indices);

struct EpsSearch {
  double eps_max = 1.0;
  int probes = 4096;
  std::uint64_t seed = 0;
};

struct NormalizeResult {
  Tiling tiling;
  std::size_t tile_index = 0;  // the homothetic tile
  double eps = 0.0;            // local radius where K and L agree around x_L
  double radius = 0.0;         // R with K inside ball(x_L, R)
  double stretch = 0.0;        // R / eps
  int depth = 0;               // exponent d
  int rotation_period = 1;     // k with M^k near I; depth is a multiple of it
  bool interior_fixed_point = false;
};

// Turns a similar tile into a homothetic one fixed at the same point:
// search eps, take d with lambda^d < eps and (R/eps) lambda^d < 1 (d a
// multiple of the period of the rotation part), refine along the chain,
// apply G = (R/eps) M^-d about x_L and meet with {K}.
NormalizeResult normalize_to_homothety(const Tiling& t, std::size_t tile_index,
                                       const EpsSearch& search = {}, double period_delta = 1e-9,
                                       int period_budget = 100000);

struct MoveResult {
  Tiling tiling;
  std::size_t tile_index = 0;
  Vector fixed_point;
  int steps = 0;           // compositions performed
  bool corrected = false;  // final correcting homothety applied
};

// Distance from `x` to the convex hull of `points` (exact, by face enumeration).
double distance_to_hull(const std::vector<Vector>& points, const Vector& x);

// Moves the fixed point of a homothetic tile to `target`, which must lie in
// the hull of the supplied tilings' fixed points (within eps).
MoveResult move_fixed_point(const std::vector<Tiling>& tilings, const Vector& target, double eps,
                            int max_steps = 60, std::int64_t interior_samples = 1000);

}  // namespace simtile
