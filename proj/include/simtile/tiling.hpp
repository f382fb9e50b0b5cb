#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "simtile/body.hpp"
#include "simtile/geometry.hpp"

namespace simtile {

struct Tile {
  Body body;
  // Similarity from the ambient body onto this tile, when the tile is similar to it.
  std::optional<Similarity> similarity_to_ambient;

  bool tagged() const { return similarity_to_ambient.has_value(); }
};

// Ambient body plus a finite list of tiles. Construction checks that every
// tag describes its tile (body == Image(tag, ambient) structurally) and has
// ratio < 1; covering is checked separately by validate_tiling.
class Tiling {
 public:
  Tiling(Body ambient, std::vector<Tile> tiles);

  // {K}
  static Tiling trivial(const Body& ambient);

  const Body& ambient() const { return ambient_; }
  const std::vector<Tile>& tiles() const { return tiles_; }
  std::size_t size() const { return tiles_.size(); }
  int dim() const { return ambient_.dim(); }
  bool proper() const { return tiles_.size() >= 2; }
  // Single tile structurally equal to the ambient.
  bool is_trivial() const;

  // Index of the first tagged tile, if any.
  std::optional<std::size_t> first_tagged() const;

 private:
  Body ambient_;
  std::vector<Tile> tiles_;
};

struct ValidationThresholds {
  double volume_gap = 0.01;
  double overlap = 0.01;
};

struct ValidationReport {
  bool covered = false;
  double volume_gap = 0.0;
  double max_overlap_fraction = 0.0;
  std::int64_t orphan_points = 0;
  bool proper = false;
  std::uint64_t seed = 0;
  std::int64_t samples = 0;
};

// Monte Carlo check over the hull of the ambient's and tiles' bounding boxes:
// orphans are Inside-K samples in no tile (Inside or Boundary), overlap is the
// largest fraction of Inside-K samples lying Inside two given tiles, and the
// volume gap compares sum of tile hits with K hits on the same samples.
ValidationReport validate_tiling(const Tiling& tiling, std::int64_t samples, std::uint64_t seed,
                                 const ValidationThresholds& thresholds = {},
                                 double tol = kDefaultTol);

}  // namespace simtile
