#include "shadowlab/system_io.hpp"

#include <json.hpp>

#include <fstream>
#include <limits>
#include <sstream>

#include "shadowlab/errors.hpp"

namespace shadowlab {

namespace {

using Json = nlohmann::ordered_json;

void require_keys(const Json& obj, const char* where, std::initializer_list<const char*> required,
                  std::initializer_list<const char*> optional) {
  for (const char* key : required) {
    if (!obj.contains(key)) {
      throw ParseError(std::string(where) + ": missing key \"" + key + "\"");
    }
  }
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* key : required) known = known || it.key() == key;
    for (const char* key : optional) known = known || it.key() == key;
    if (!known) {
      throw ParseError(std::string(where) + ": unknown key \"" + it.key() + "\"");
    }
  }
}

Rational parse_rational_at(const Json& value, const std::string& where) {
  if (!value.is_string()) throw ParseError(where + ": expected a rational string");
  try {
    return parse_rational(value.get<std::string>());
  } catch (const ParseError& e) {
    throw ParseError(where + ": " + e.what());
  }
}

}  // namespace

std::string save_system(const FiniteSystem& sys) {
  Json doc;
  doc["points"] = Json::array();
  for (PointId i = 0; i < sys.size(); ++i) {
    const Point& p = sys.point(i);
    Json jp;
    jp["label"] = p.label;
    if (p.coords) {
      Json coords = Json::array();
      for (const Rational& c : *p.coords) coords.push_back(format_rational(c));
      jp["coords"] = std::move(coords);
    }
    doc["points"].push_back(std::move(jp));
  }
  if (sys.metric_kind() == MetricKind::Euclidean) {
    doc["metric"] = Json{{"type", "euclidean"}};
  } else {
    Json table = Json::array();
    for (PointId i = 0; i < sys.size(); ++i) {
      Json row = Json::array();
      for (PointId j = 0; j < sys.size(); ++j) {
        row.push_back(format_rational(sys.squared_table()[i][j]));
      }
      table.push_back(std::move(row));
    }
    doc["metric"] = Json{{"type", "matrix"}, {"sq", std::move(table)}};
  }
  doc["map"] = Json::array();
  for (const PointId y : sys.map()) doc["map"].push_back(y);
  doc["meta"] = Json::object();
  for (const auto& [k, v] : sys.meta()) doc["meta"][k] = v;
  return doc.dump(2) + "\n";
}

void save_system_file(const FiniteSystem& sys, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open \"" + path + "\" for writing");
  out << save_system(sys);
}

FiniteSystem load_system(const std::string& json_text, bool validate) {
  Json doc;
  try {
    doc = Json::parse(json_text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("document is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("document root must be an object");
  require_keys(doc, "document", {"points", "metric", "map"}, {"meta"});

  const Json& jpoints = doc["points"];
  if (!jpoints.is_array()) throw ParseError("\"points\" must be an array");
  std::vector<Point> points;
  for (std::size_t i = 0; i < jpoints.size(); ++i) {
    const std::string where = "points[" + std::to_string(i) + "]";
    const Json& jp = jpoints[i];
    if (!jp.is_object()) throw ParseError(where + ": expected an object");
    require_keys(jp, where.c_str(), {"label"}, {"coords"});
    Point p;
    if (!jp["label"].is_string()) throw ParseError(where + ".label: expected a string");
    p.label = jp["label"].get<std::string>();
    if (jp.contains("coords")) {
      if (!jp["coords"].is_array()) throw ParseError(where + ".coords: expected an array");
      std::vector<Rational> coords;
      for (std::size_t k = 0; k < jp["coords"].size(); ++k) {
        coords.push_back(
            parse_rational_at(jp["coords"][k], where + ".coords[" + std::to_string(k) + "]"));
      }
      p.coords = std::move(coords);
    }
    points.push_back(std::move(p));
  }

  const Json& jmetric = doc["metric"];
  if (!jmetric.is_object() || !jmetric.contains("type") || !jmetric["type"].is_string()) {
    throw ParseError("\"metric\" must be an object with a \"type\" string");
  }
  const std::string metric_type = jmetric["type"].get<std::string>();

  const Json& jmap = doc["map"];
  if (!jmap.is_array()) throw ParseError("\"map\" must be an array");
  std::vector<PointId> map;
  for (std::size_t i = 0; i < jmap.size(); ++i) {
    const std::string where = "map[" + std::to_string(i) + "]";
    if (!jmap[i].is_number_integer() || jmap[i].is_number_float()) {
      throw ParseError(where + ": expected an integer");
    }
    const auto v = jmap[i].get<std::int64_t>();
    if (v < 0 || v > std::numeric_limits<PointId>::max()) {
      throw ParseError(where + ": image index out of representable range");
    }
    map.push_back(static_cast<PointId>(v));
  }

  std::map<std::string, std::string> meta;
  if (doc.contains("meta")) {
    if (!doc["meta"].is_object()) throw ParseError("\"meta\" must be an object");
    for (auto it = doc["meta"].begin(); it != doc["meta"].end(); ++it) {
      if (!it.value().is_string()) {
        throw ParseError("meta[\"" + it.key() + "\"]: expected a string");
      }
      meta[it.key()] = it.value().get<std::string>();
    }
  }

  FiniteSystem sys = [&]() {
    if (metric_type == "euclidean") {
      require_keys(jmetric, "metric", {"type"}, {});
      for (std::size_t i = 0; i < points.size(); ++i) {
        if (!points[i].coords) {
          throw ParseError("metric is euclidean but points[" + std::to_string(i) +
                           "] has no coords");
        }
      }
      try {
        return FiniteSystem::euclidean(std::move(points), std::move(map), std::move(meta));
      } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("bad euclidean document: ") + e.what());
      }
    }
    if (metric_type == "matrix") {
      require_keys(jmetric, "metric", {"type", "sq"}, {});
      const Json& jsq = jmetric["sq"];
      if (!jsq.is_array() || jsq.size() != points.size()) {
        throw ParseError("metric.sq must be a " + std::to_string(points.size()) + "-row table");
      }
      std::vector<std::vector<Rational>> sq;
      for (std::size_t i = 0; i < jsq.size(); ++i) {
        if (!jsq[i].is_array() || jsq[i].size() != points.size()) {
          throw ParseError("metric.sq[" + std::to_string(i) + "] has wrong length");
        }
        std::vector<Rational> row;
        for (std::size_t j = 0; j < jsq[i].size(); ++j) {
          row.push_back(parse_rational_at(
              jsq[i][j], "metric.sq[" + std::to_string(i) + "][" + std::to_string(j) + "]"));
        }
        sq.push_back(std::move(row));
      }
      return FiniteSystem::matrix(std::move(points), std::move(sq), std::move(map),
                                  std::move(meta));
    }
    throw ParseError("metric.type must be \"euclidean\" or \"matrix\"");
  }();

  if (validate) {
    const ValidationResult result = sys.validate();
    if (!result.ok()) throw ValidationError(result.violations);
  }
  return sys;
}

FiniteSystem load_system_file(const std::string& path, bool validate) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open \"" + path + "\"");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_system(buffer.str(), validate);
}

}  // namespace shadowlab
