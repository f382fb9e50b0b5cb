// Writes every catalog example as a canonical tiling file plus catalog.json.
#include <filesystem>
#include <fstream>
#include <iostream>

#include "simtile/examples.hpp"
#include "simtile/serialize.hpp"

using namespace simtile;

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: simtile_fixtures DIR\n";
    return 1;
  }
  const std::filesystem::path dir = argv[1];
  std::filesystem::create_directories(dir);
  Json catalog = Json::array();
  for (const ExampleSpec& spec : example_catalog()) {
    write_tiling((dir / (spec.name + ".json")).string(), build_example(spec.name));
    Json entry;
    entry["name"] = spec.name;
    entry["dim"] = spec.dim;
    entry["file"] = spec.name + ".json";
    entry["expected"]["tile_count"] = spec.expected.tile_count;
    entry["expected"]["tip_dim"] = spec.expected.tip_dim;
    entry["expected"]["volumes"] = spec.expected.volumes ? Json(*spec.expected.volumes) : Json(nullptr);
    entry["basis"] = spec.basis;
    catalog.push_back(std::move(entry));
  }
  std::ofstream out(dir / "catalog.json", std::ios::binary);
  out << dump(catalog);
  return out ? 0 : 1;
}
