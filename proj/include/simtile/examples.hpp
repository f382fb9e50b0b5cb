#pragma once

#include <optional>
#include <string>
#include <vector>

#include "simtile/tiling.hpp"

namespace simtile {

// ConeSpindle(n) cut near the tips: tiles f_i(K) tagged with the homothety
// of ratio 1/2 about e_i (i = 3..n, 1-based) followed by the remainder
// K cap {x_i <= 1/2 for all i}. n - 1 tiles.
Tiling cone_spindle_tiling(int n);

// One copy of `t` per tagged tile, each keeping only that tile's tag.
std::vector<Tiling> designated_tilings(const Tiling& t);

// Unit square in four quarters; tile `corner` (bit 0 = x, bit 1 = y) is the
// image of the square under the ratio-1/2 homothety fixing that corner.
Tiling quarter_square_tiling(int corner);

// Unit square in four quarters where the (0,0) quarter is tagged with
// x -> 1/2 R x + (1/2, 0), R the quarter turn. The tag fixes (2/5, 1/5).
Tiling rotated_similar_tile_fixture();

// Unit cube in eight octants; octants 0 and 7 are tagged with the ratio-1/2
// homotheties fixing the corners 0 and (1,1,1).
Tiling cube_octant_tiling();

// [0,1]^n as a polytope.
Body unit_cube(int n);

struct ExampleExpectation {
  std::size_t tile_count = 0;
  int tip_dim = 0;
  std::optional<std::vector<double>> volumes;
};

struct ExampleSpec {
  std::string name;
  int dim = 0;
  ExampleExpectation expected;
  std::string basis;  // how the expected values were obtained
};

std::vector<ExampleSpec> example_catalog();
// Builds the tiling named in the catalog; throws InvalidArgument for unknown names.
Tiling build_example(const std::string& name);

}  // namespace simtile
