#pragma once

#include <string>

#include <json.hpp>

#include "simtile/constructions.hpp"
#include "simtile/slice.hpp"
#include "simtile/tiling.hpp"

namespace simtile {

using Json = nlohmann::ordered_json;

Json to_json(const Vector& v);
Json to_json(const Similarity& f);
Json to_json(const Body& b);
Json to_json(const SliceChart& c);
Json to_json(const Tiling& t);
Json to_json(const ValidationReport& r);
Json to_json(const TipSimplex& s);

// Parsers take the source path for diagnostics; `field` is the JSON pointer
// of the value being read. Failures throw ParseError(path, field, ...).
Vector vector_from_json(const Json& j, const std::string& path, const std::string& field);
Similarity similarity_from_json(const Json& j, const std::string& path, const std::string& field);
Body body_from_json(const Json& j, const std::string& path, const std::string& field);
SliceChart chart_from_json(const Json& j, const std::string& path, const std::string& field);
Tiling tiling_from_json(const Json& j, const std::string& path);

// Canonical text: two-space indent and a trailing newline.
std::string dump(const Json& j);

Tiling read_tiling(const std::string& path);
void write_tiling(const std::string& path, const Tiling& t);

}  // namespace simtile
