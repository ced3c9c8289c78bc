#include <fstream>
#include <sstream>

#include "json.hpp"
#include "relcap/geometry.hpp"

namespace relcap {

namespace {

using nlohmann::json;

Point read_point(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ParseError(std::string(what) + ": expected [x,y]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

const json& member(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw ParseError(std::string("missing key '") + key + "'");
  }
  return obj.at(key);
}

json write_point(Point p) { return json::array({p.real(), p.imag()}); }

}  // namespace

Region parse_region(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("region file is not valid JSON: ") + e.what());
  }
  const json& list = member(doc, "primitives");
  if (!list.is_array()) {
    throw ParseError("'primitives' must be an array");
  }
  std::vector<Primitive> prims;
  for (const json& item : list) {
    if (!item.is_object() || item.size() != 1) {
      throw ParseError("each primitive must be an object with exactly one key");
    }
    const std::string kind = item.begin().key();
    const json& body = item.begin().value();
    if (kind == "disk") {
      const json& r = member(body, "radius");
      if (!r.is_number()) {
        throw ParseError("disk radius must be a number");
      }
      prims.emplace_back(Disk{read_point(member(body, "center"), "disk center"), r.get<double>()});
    } else if (kind == "polygon") {
      const json& verts = member(body, "vertices");
      if (!verts.is_array()) {
        throw ParseError("polygon vertices must be an array");
      }
      Polygon poly;
      for (const json& v : verts) {
        poly.vertices.push_back(read_point(v, "polygon vertex"));
      }
      prims.emplace_back(std::move(poly));
    } else if (kind == "segment") {
      prims.emplace_back(Segment{read_point(member(body, "a"), "segment a"),
                                 read_point(member(body, "b"), "segment b")});
    } else if (kind == "sigma") {
      if (!body.is_object() || !body.empty()) {
        throw ParseError("sigma takes an empty object");
      }
      prims.emplace_back(Sigma{});
    } else {
      throw ParseError("unknown primitive '" + kind + "'");
    }
  }
  return Region(std::move(prims));
}

std::string serialize_region(const Region& region) {
  json list = json::array();
  for (const auto& prim : region.primitives()) {
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, Disk>) {
            list.push_back({{"disk", {{"center", write_point(x.center)}, {"radius", x.radius}}}});
          } else if constexpr (std::is_same_v<T, Polygon>) {
            json verts = json::array();
            for (const Point v : x.vertices) {
              verts.push_back(write_point(v));
            }
            list.push_back({{"polygon", {{"vertices", verts}}}});
          } else if constexpr (std::is_same_v<T, Segment>) {
            list.push_back({{"segment", {{"a", write_point(x.a)}, {"b", write_point(x.b)}}}});
          } else {
            list.push_back({{"sigma", json::object()}});
          }
        },
        prim);
  }
  return json{{"primitives", list}}.dump();
}

Region load_region(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open region file " + path);
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_region(buffer.str());
}

void save_region(const Region& region, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write region file " + path);
  }
  out << serialize_region(region) << '\n';
}

}  // namespace relcap
