#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "simtile/errors.hpp"
#include "simtile/examples.hpp"
#include "simtile/serialize.hpp"

using namespace simtile;

namespace {

bool same_tag(const std::optional<Similarity>& a, const std::optional<Similarity>& b) {
  if (a.has_value() != b.has_value()) return false;
  if (!a) return true;
  return std::abs(a->scale() - b->scale()) <= 1e-12 && max_abs_diff(a->rotation(), b->rotation()) <= 1e-12 &&
         (a->translation() - b->translation()).cwiseAbs().maxCoeff() <= 1e-12;
}

void check_round_trip(const Tiling& t) {
  const Json j = to_json(t);
  const Tiling back = tiling_from_json(Json::parse(dump(j)), "<memory>");
  CHECK(back.ambient().structurally_equal(t.ambient()));
  REQUIRE(back.size() == t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    CHECK(back.tiles()[i].body.structurally_equal(t.tiles()[i].body));
    CHECK(same_tag(back.tiles()[i].similarity_to_ambient, t.tiles()[i].similarity_to_ambient));
  }
  CHECK(dump(to_json(back)) == dump(j));
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ParseError parse_error_of(const std::string& text) {
  try {
    tiling_from_json(Json::parse(text), "in.json");
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("no ParseError");
  return ParseError("", "", "");
}

}  // namespace

TEST_CASE("round trips of every catalog example") {
  for (const auto& spec : example_catalog()) {
    CAPTURE(spec.name);
    check_round_trip(build_example(spec.name));
  }
}

TEST_CASE("round trips of intersections and sections") {
  const Tiling t = cone_spindle_tiling(4);
  Vector n(4), p(4);
  n << 0.8, -0.3, 0.5, 0.2;
  p << 0, 0, 0.5, 0.5;
  const SliceResult r = slice_tiling(t, Hyperplane::through(n, p));
  check_round_trip(r.tiling);
  CHECK(to_json(r.tiling)["ambient"]["type"] == "section");
  CHECK(to_json(t)["tiles"][2]["body"]["type"] == "intersection");
}

TEST_CASE("similarity encoding") {
  const Json h = to_json(Similarity::homothety(0.5, Eigen::Vector2d(1, 0)));
  CHECK(h["rotation"] == "I");
  CHECK(h["scale"] == 0.5);
  const Json r = to_json(*rotated_similar_tile_fixture().tiles()[0].similarity_to_ambient);
  CHECK(r["rotation"].is_array());
  CHECK(r["rotation"][0][1] == -1.0);
  const Json untagged = to_json(quarter_square_tiling(0))["tiles"][1];
  CHECK_FALSE(untagged.contains("similarity_to_ambient"));
}

TEST_CASE("validation report field names") {
  ValidationReport rep;
  rep.covered = true;
  rep.samples = 10;
  const Json j = to_json(rep);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"covered", "volume_gap", "max_overlap_fraction", "orphan_points",
                                         "proper", "seed", "samples"});
}

TEST_CASE("parse errors carry path and field") {
  const ParseError missing = parse_error_of(R"({"tiles": []})");
  CHECK(missing.path() == "in.json");
  CHECK(missing.field() == "/ambient");

  const ParseError type = parse_error_of(R"({"ambient": {"type": "blob"}, "tiles": []})");
  CHECK(type.field() == "/ambient/type");

  const ParseError num = parse_error_of(
      R"({"ambient": {"type": "cone_spindle", "dim": 3}, "tiles": [{"body": {"type": "polytope",
         "halfspaces": [{"normal": [1, 0, "x"], "offset": 1}]}}]})");
  CHECK(num.field() == "/tiles/0/body/halfspaces/0/normal/2");

  const ParseError rot = parse_error_of(
      R"({"ambient": {"type": "cone_spindle", "dim": 2}, "tiles": [{"body": {"type": "cone_spindle", "dim": 2},
         "similarity_to_ambient": {"scale": 0.5, "rotation": [[1, 1], [0, 1]], "translation": [0, 0]}}]})");
  CHECK(rot.field() == "/tiles/0/similarity_to_ambient");

  const std::filesystem::path bad = std::filesystem::temp_directory_path() / "simtile_bad.json";
  std::ofstream(bad) << "{ not json";
  CHECK_THROWS_AS(read_tiling(bad.string()), ParseError);
  CHECK_THROWS_AS(read_tiling("/nonexistent/x.json"), ParseError);
}

TEST_CASE("shipped fixtures are byte-stable") {
  const std::filesystem::path dir = std::filesystem::path(SIMTILE_SOURCE_DIR) / "fixtures";
  for (const auto& spec : example_catalog()) {
    CAPTURE(spec.name);
    const std::string shipped = read_file(dir / (spec.name + ".json"));
    CHECK(shipped == dump(to_json(build_example(spec.name))));
    const Tiling t = read_tiling((dir / (spec.name + ".json")).string());
    CHECK(t.size() == spec.expected.tile_count);
  }
}
