#include "simtile/serialize.hpp"

#include <fstream>
#include <sstream>

#include "simtile/errors.hpp"

namespace simtile {

namespace {

// Writes -0.0 as 0.0 so files do not depend on how a zero was produced.
double clean(double x) { return x == 0.0 ? 0.0 : x; }

const Json& member(const Json& j, const char* key, const std::string& path, const std::string& field) {
  if (!j.is_object()) throw ParseError(path, field, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(path, field + "/" + key, "missing");
  return *it;
}

double number(const Json& j, const std::string& path, const std::string& field) {
  if (!j.is_number()) throw ParseError(path, field, "expected a number");
  return j.get<double>();
}

Json matrix_rows(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(clean(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_rows(const Json& j, Eigen::Index rows, Eigen::Index cols, const std::string& path,
                        const std::string& field) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows) {
    throw ParseError(path, field, "expected " + std::to_string(rows) + " rows");
  }
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const std::string rf = field + "/" + std::to_string(i);
    const Json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw ParseError(path, rf, "expected " + std::to_string(cols) + " entries");
    }
    for (Eigen::Index k = 0; k < cols; ++k) {
      m(i, k) = number(row[static_cast<std::size_t>(k)], path, rf + "/" + std::to_string(k));
    }
  }
  return m;
}

Json halfspaces_json(const std::vector<Halfspace>& hs) {
  Json out = Json::array();
  for (const auto& h : hs) out.push_back(Json{{"normal", to_json(h.normal)}, {"offset", clean(h.offset)}});
  return out;
}

std::vector<Halfspace> halfspaces_from_json(const Json& j, const std::string& path, const std::string& field) {
  if (!j.is_array()) throw ParseError(path, field, "expected an array");
  std::vector<Halfspace> hs;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string f = field + "/" + std::to_string(i);
    const Vector n = vector_from_json(member(j[i], "normal", path, f), path, f + "/normal");
    const double r = number(member(j[i], "offset", path, f), path, f + "/offset");
    try {
      hs.push_back(Halfspace::from(n, r));
    } catch (const Error& e) {
      throw ParseError(path, f, e.what());
    }
  }
  return hs;
}

}  // namespace

Json to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(clean(v[i]));
  return out;
}

Json to_json(const Similarity& f) {
  Json out;
  out["scale"] = f.scale();
  const Matrix& R = f.rotation();
  if (R == Matrix::Identity(R.rows(), R.cols())) {
    out["rotation"] = "I";
  } else {
    out["rotation"] = matrix_rows(R);
  }
  out["translation"] = to_json(f.translation());
  return out;
}

Json to_json(const SliceChart& c) {
  Json out;
  out["normal"] = to_json(c.hyperplane().normal);
  out["offset"] = clean(c.hyperplane().offset);
  out["origin"] = to_json(c.origin());
  out["frame"] = matrix_rows(c.frame());
  return out;
}

Json to_json(const Body& b) {
  Json out;
  switch (b.kind()) {
    case BodyKind::Polytope:
      out["type"] = "polytope";
      out["halfspaces"] = halfspaces_json(b.halfspaces());
      break;
    case BodyKind::ConeSpindle:
      out["type"] = "cone_spindle";
      out["dim"] = b.cone_dim();
      break;
    case BodyKind::Image:
      out["type"] = "image";
      out["map"] = to_json(b.map());
      out["base"] = to_json(b.base());
      break;
    case BodyKind::Intersection: {
      out["type"] = "intersection";
      Json parts = Json::array();
      for (const auto& p : b.parts()) parts.push_back(to_json(p));
      out["bodies"] = std::move(parts);
      out["halfspaces"] = halfspaces_json(b.halfspaces());
      break;
    }
    case BodyKind::Section:
      out["type"] = "section";
      out["chart"] = to_json(b.chart());
      out["base"] = to_json(b.base());
      break;
  }
  return out;
}

Json to_json(const Tiling& t) {
  Json out;
  out["ambient"] = to_json(t.ambient());
  Json tiles = Json::array();
  for (const auto& tile : t.tiles()) {
    Json entry;
    entry["body"] = to_json(tile.body);
    if (tile.tagged()) entry["similarity_to_ambient"] = to_json(*tile.similarity_to_ambient);
    tiles.push_back(std::move(entry));
  }
  out["tiles"] = std::move(tiles);
  return out;
}

Json to_json(const ValidationReport& r) {
  Json out;
  out["covered"] = r.covered;
  out["volume_gap"] = r.volume_gap;
  out["max_overlap_fraction"] = r.max_overlap_fraction;
  out["orphan_points"] = r.orphan_points;
  out["proper"] = r.proper;
  out["seed"] = r.seed;
  out["samples"] = r.samples;
  return out;
}

Json to_json(const TipSimplex& s) {
  Json out;
  Json pts = Json::array();
  for (const auto& p : s.points) pts.push_back(to_json(p));
  out["points"] = std::move(pts);
  out["affine_dim"] = s.affine_dim;
  out["nondegenerate_for"] = s.nondegenerate_for ? Json(*s.nondegenerate_for) : Json(nullptr);
  return out;
}

Vector vector_from_json(const Json& j, const std::string& path, const std::string& field) {
  if (!j.is_array() || j.empty()) throw ParseError(path, field, "expected a nonempty array of numbers");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v[static_cast<Eigen::Index>(i)] = number(j[i], path, field + "/" + std::to_string(i));
  }
  return v;
}

Similarity similarity_from_json(const Json& j, const std::string& path, const std::string& field) {
  const double scale = number(member(j, "scale", path, field), path, field + "/scale");
  const Vector t = vector_from_json(member(j, "translation", path, field), path, field + "/translation");
  const Json& rj = member(j, "rotation", path, field);
  Matrix R;
  if (rj.is_string()) {
    if (rj.get<std::string>() != "I") throw ParseError(path, field + "/rotation", "only \"I\" is accepted as a string");
    R = Matrix::Identity(t.size(), t.size());
  } else {
    R = matrix_from_rows(rj, t.size(), t.size(), path, field + "/rotation");
  }
  try {
    return Similarity(scale, std::move(R), t);
  } catch (const Error& e) {
    throw ParseError(path, field, e.what());
  }
}

SliceChart chart_from_json(const Json& j, const std::string& path, const std::string& field) {
  const Vector n = vector_from_json(member(j, "normal", path, field), path, field + "/normal");
  const double r = number(member(j, "offset", path, field), path, field + "/offset");
  const Vector o = vector_from_json(member(j, "origin", path, field), path, field + "/origin");
  const Matrix F = matrix_from_rows(member(j, "frame", path, field), n.size(), n.size() - 1, path,
                                    field + "/frame");
  try {
    return SliceChart(Hyperplane::from(n, r), o, F);
  } catch (const Error& e) {
    throw ParseError(path, field, e.what());
  }
}

Body body_from_json(const Json& j, const std::string& path, const std::string& field) {
  const Json& type = member(j, "type", path, field);
  if (!type.is_string()) throw ParseError(path, field + "/type", "expected a string");
  const std::string kind = type.get<std::string>();
  try {
    if (kind == "polytope") {
      return Body::polytope(halfspaces_from_json(member(j, "halfspaces", path, field), path, field + "/halfspaces"));
    }
    if (kind == "cone_spindle") {
      const Json& d = member(j, "dim", path, field);
      if (!d.is_number_integer()) throw ParseError(path, field + "/dim", "expected an integer");
      return Body::cone_spindle(d.get<int>());
    }
    if (kind == "image") {
      return Body::image(similarity_from_json(member(j, "map", path, field), path, field + "/map"),
                         body_from_json(member(j, "base", path, field), path, field + "/base"));
    }
    if (kind == "intersection") {
      const Json& bodies = member(j, "bodies", path, field);
      if (!bodies.is_array()) throw ParseError(path, field + "/bodies", "expected an array");
      std::vector<Body> parts;
      for (std::size_t i = 0; i < bodies.size(); ++i) {
        parts.push_back(body_from_json(bodies[i], path, field + "/bodies/" + std::to_string(i)));
      }
      std::vector<Halfspace> hs;
      if (j.contains("halfspaces")) hs = halfspaces_from_json(j["halfspaces"], path, field + "/halfspaces");
      return Body::intersection(std::move(parts), std::move(hs));
    }
    if (kind == "section") {
      return Body::section(chart_from_json(member(j, "chart", path, field), path, field + "/chart"),
                           body_from_json(member(j, "base", path, field), path, field + "/base"));
    }
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(path, field, e.what());
  }
  throw ParseError(path, field + "/type", "unknown body type '" + kind + "'");
}

Tiling tiling_from_json(const Json& j, const std::string& path) {
  const Body ambient = body_from_json(member(j, "ambient", path, ""), path, "/ambient");
  const Json& tiles_j = member(j, "tiles", path, "");
  if (!tiles_j.is_array()) throw ParseError(path, "/tiles", "expected an array");
  std::vector<Tile> tiles;
  for (std::size_t i = 0; i < tiles_j.size(); ++i) {
    const std::string f = "/tiles/" + std::to_string(i);
    Tile tile{body_from_json(member(tiles_j[i], "body", path, f), path, f + "/body"), std::nullopt};
    if (tiles_j[i].contains("similarity_to_ambient")) {
      tile.similarity_to_ambient =
          similarity_from_json(tiles_j[i]["similarity_to_ambient"], path, f + "/similarity_to_ambient");
    }
    tiles.push_back(std::move(tile));
  }
  try {
    return Tiling(ambient, std::move(tiles));
  } catch (const Error& e) {
    throw ParseError(path, "/tiles", e.what());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Tiling read_tiling(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, "", "cannot open file");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path, "", std::string("malformed JSON: ") + e.what());
  }
  return tiling_from_json(j, path);
}

void write_tiling(const std::string& path, const Tiling& t) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << dump(to_json(t));
  if (!out) throw Error("write to '" + path + "' failed");
}

}  // namespace simtile
