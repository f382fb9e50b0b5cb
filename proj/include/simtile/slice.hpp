#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "simtile/tiling.hpp"

namespace simtile {

struct SliceResult {
  SliceChart chart;
  Tiling tiling;                      // {H} * T in chart coordinates
  std::vector<std::size_t> sources;   // source tile index for each slice tile
  bool proper = false;
};

// Induced tiling on H cap K. Polyhedral tiles slice exactly to polytopes in
// the chart; other tiles become sections. A tile tagged with a homothety
// whose fixed point lies on H yields a tagged homothetic copy of the
// ambient slice. When no tile meets H in its interior (H runs along a
// separating hyperplane) the result is {H cap K} with proper = false and no
// sources. Throws EmptySlice when H misses K and DegenerateSlice when H only
// touches it.
SliceResult slice_tiling(const Tiling& t, const Hyperplane& h, std::int64_t samples = 1000,
                         std::uint64_t seed = 0);

// Slice of a single body in the given chart, or nothing when the slice has
// no relative interior.
std::optional<Body> slice_body(const Body& body, const SliceChart& chart);

struct CloudPoint {
  std::size_t tile;
  Vector point;
};

// Boundary samples per slice tile: ray bisection from each tile's interior
// point along `resolution` directions, in chart coordinates.
std::vector<CloudPoint> slice_cloud(const Tiling& slice, int resolution, std::uint64_t seed = 0);

// CSV with header "tile,c0,c1,..." and %.17g numbers.
void write_cloud_csv(std::ostream& out, const std::vector<CloudPoint>& cloud, int dim);

}  // namespace simtile
