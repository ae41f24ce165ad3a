#pragma once

// File formats: .arc text, polygon JSON, OBJ polyline.

#include "stickbound/arcpres.hpp"
#include "stickbound/construct.hpp"

#include "json.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace stickbound {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << data;
  if (!out) throw IoError("write failed for '" + path + "'");
}

inline ArcPresentation read_arc(const std::string& path) { return parse_arc(read_file(path)); }

inline std::optional<EdgeRole> parse_role(std::string_view s) {
  for (EdgeRole r : {EdgeRole::horizontal, EdgeRole::vertical, EdgeRole::hypotenuse,
                     EdgeRole::extension, EdgeRole::connector})
    if (s == to_string(r)) return r;
  return std::nullopt;
}

inline nlohmann::ordered_json polygon_json(const BuildResult& r) {
  const Certificate& c = r.cert;
  nlohmann::ordered_json j;
  j["n"] = c.n;
  j["shift"] = c.shift;
  j["beta"] = {c.beta.beta1, c.beta.beta2, c.beta.beta3};
  j["sticks"] = c.sticks_k3;
  j["bound_num"] = 3 * (static_cast<long>(c.n) - 1);
  j["bound"] = to_string(c.bound);
  j["bound_satisfied"] = c.bound_satisfied;
  j["top_reduction"] = c.top_reduction_label();
  auto& verts = j["vertices"] = nlohmann::ordered_json::array();
  for (const auto& p : r.knot.vertices) verts.push_back({to_string(p.x), to_string(p.y), to_string(p.z)});
  auto& roles = j["edge_roles"] = nlohmann::ordered_json::array();
  for (EdgeRole e : r.knot.roles) roles.push_back(to_string(e));
  j["invariants_match"] = c.invariants_match;
  j["determinant"] = c.determinant.get_si();
  return j;
}

inline std::string polygon_json_text(const BuildResult& r) { return polygon_json(r).dump(2) + "\n"; }

/// Stored polygon as read back from JSON; only the geometry is trusted.
struct StoredPolygon {
  std::vector<Point3> vertices;
  std::vector<EdgeRole> roles;
  std::optional<long> sticks;
};

inline StoredPolygon parse_polygon_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw IoError(std::string("polygon JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("vertices") || !j["vertices"].is_array())
    throw IoError("polygon JSON: missing \"vertices\" array");
  StoredPolygon p;
  std::size_t idx = 0;
  for (const auto& v : j["vertices"]) {
    if (!v.is_array() || v.size() != 3)
      throw IoError("polygon JSON: vertex " + std::to_string(idx) + " is not a triple");
    Rational c[3];
    for (int a = 0; a < 3; ++a) {
      if (!v[a].is_string())
        throw IoError("polygon JSON: vertex " + std::to_string(idx) + " coordinate is not a string");
      try {
        c[a] = parse_rational(v[a].get<std::string>());
      } catch (const std::invalid_argument& e) {
        throw IoError("polygon JSON: vertex " + std::to_string(idx) + ": " + e.what());
      }
    }
    p.vertices.push_back({c[0], c[1], c[2]});
    ++idx;
  }
  if (j.contains("edge_roles") && j["edge_roles"].is_array()) {
    for (const auto& r : j["edge_roles"]) {
      auto role = r.is_string() ? parse_role(r.get<std::string>()) : std::nullopt;
      if (!role) throw IoError("polygon JSON: unknown edge role");
      p.roles.push_back(*role);
    }
  }
  if (j.contains("sticks") && j["sticks"].is_number_integer()) p.sticks = j["sticks"].get<long>();
  return p;
}

inline std::string obj_text(const std::vector<Point3>& vertices) {
  std::string out;
  char buf[128];
  for (const auto& p : vertices) {
    std::snprintf(buf, sizeof buf, "v %.12g %.12g %.12g\n", p.x.get_d(), p.y.get_d(), p.z.get_d());
    out += buf;
  }
  out += "l";
  for (std::size_t k = 1; k <= vertices.size(); ++k) out += " " + std::to_string(k);
  if (!vertices.empty()) out += " 1";
  out += "\n";
  return out;
}

}  // namespace stickbound
