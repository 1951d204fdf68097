#include "hzmp/scenario.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace hzmp {

namespace {

using nlohmann::json;

Vec vecFromJson(const json& j, const std::string& field, int expectedDim) {
  if (!j.is_array()) {
    throw ScenarioParseError(field + ": expected an array of numbers");
  }
  Vec out(static_cast<Eigen::Index>(j.size()));
  Eigen::Index i = 0;
  for (const auto& entry : j) {
    if (!entry.is_number()) {
      throw ScenarioParseError(field + ": expected finite numbers");
    }
    const double v = entry.get<double>();
    if (!std::isfinite(v)) {
      throw ScenarioParseError(field + ": non-finite number");
    }
    out(i++) = v;
  }
  if (expectedDim >= 0 && out.size() != expectedDim) {
    throw ScenarioParseError(field + ": expected " +
                             std::to_string(expectedDim) + " entries");
  }
  return out;
}

std::vector<ConvexRegion> regionsFromJson(const json& j,
                                          const std::string& field, int dim) {
  if (!j.is_array()) {
    throw ScenarioParseError(field + ": expected an array");
  }
  std::vector<ConvexRegion> out;
  int index = 0;
  for (const auto& entry : j) {
    const std::string prefix = field + "[" + std::to_string(index++) + "]";
    if (!entry.is_object() || !entry.contains("vertices")) {
      throw ScenarioParseError(prefix + ": expected {\"vertices\": [...]}");
    }
    ConvexRegion region;
    int vi = 0;
    for (const auto& v : entry.at("vertices")) {
      region.vertices.push_back(
          vecFromJson(v, prefix + ".vertices[" + std::to_string(vi++) + "]", dim));
    }
    if (dim == 2) makeCcw2d(region);
    out.push_back(std::move(region));
  }
  return out;
}

Scenario validateAndBuild(const json& doc) {
  for (const char* field : {"dimension", "workspace", "start", "goal"}) {
    if (!doc.contains(field)) {
      throw ScenarioParseError(std::string(field) + ": missing");
    }
  }
  Scenario s;
  s.dimension = doc.at("dimension").get<int>();
  if (s.dimension < 2) {
    throw ScenarioParseError("dimension: must be at least 2");
  }
  const json& ws = doc.at("workspace");
  if (!ws.is_object() || !ws.contains("lower") || !ws.contains("upper")) {
    throw ScenarioParseError("workspace: expected {\"lower\":[..],\"upper\":[..]}");
  }
  s.workspace = Box(vecFromJson(ws.at("lower"), "workspace.lower", s.dimension),
                    vecFromJson(ws.at("upper"), "workspace.upper", s.dimension));
  s.start = vecFromJson(doc.at("start"), "start", s.dimension);
  s.goal = vecFromJson(doc.at("goal"), "goal", s.dimension);
  s.name = doc.value("name", std::string("unnamed"));

  const bool hasObstacles = doc.contains("obstacles");
  const bool hasFree = doc.contains("free_regions");
  if (hasObstacles == hasFree) {
    throw ScenarioParseError(
        "exactly one of obstacles/free_regions must be present");
  }
  if (hasObstacles) {
    if (s.dimension != 2) {
      throw ScenarioParseError("obstacles: only supported for dimension 2");
    }
    s.obstacles = regionsFromJson(doc.at("obstacles"), "obstacles", 2);
  } else {
    s.freeRegions = regionsFromJson(doc.at("free_regions"), "free_regions",
                                    s.dimension);
    s.hasFreeRegions = true;
    if (s.freeRegions.empty()) {
      throw ScenarioParseError("free_regions: must not be empty");
    }
  }

  if ((s.start - s.goal).norm() < 1e-12) {
    throw ScenarioParseError("start: must differ from goal");
  }
  if (!s.workspace.contains(s.start, 1e-9)) {
    throw ScenarioParseError("start: outside the workspace");
  }
  if (!s.workspace.contains(s.goal, 1e-9)) {
    throw ScenarioParseError("goal: outside the workspace");
  }

  if (hasObstacles) {
    std::string offending;
    for (size_t i = 0; i < s.obstacles.size(); ++i) {
      for (size_t j = i + 1; j < s.obstacles.size(); ++j) {
        if (regionsInteriorOverlap2d(s.obstacles[i], s.obstacles[j])) {
          if (!offending.empty()) offending += ", ";
          offending += "(" + std::to_string(i) + "," + std::to_string(j) + ")";
        }
      }
    }
    if (!offending.empty()) {
      throw MergeRequired("obstacles with overlapping interiors: " + offending);
    }
  }
  return s;
}

json regionsToJson(const std::vector<ConvexRegion>& regions) {
  json arr = json::array();
  for (const auto& region : regions) {
    json verts = json::array();
    for (const Vec& v : region.vertices) {
      json coords = json::array();
      for (Eigen::Index k = 0; k < v.size(); ++k) coords.push_back(v(k));
      verts.push_back(coords);
    }
    arr.push_back(json{{"vertices", verts}});
  }
  return arr;
}

}  // namespace

Scenario parseScenario(const std::string& jsonText) {
  json doc;
  try {
    doc = json::parse(jsonText);
  } catch (const json::parse_error& e) {
    throw ScenarioParseError(std::string("parse error: ") + e.what());
  }
  return validateAndBuild(doc);
}

Scenario loadScenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ScenarioParseError("cannot open " + path.string());
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parseScenario(buffer.str());
}

std::string scenarioToJson(const Scenario& scenario) {
  json doc;
  doc["dimension"] = scenario.dimension;
  json ws;
  json lo = json::array(), hi = json::array();
  for (Eigen::Index k = 0; k < scenario.workspace.lower.size(); ++k) {
    lo.push_back(scenario.workspace.lower(k));
    hi.push_back(scenario.workspace.upper(k));
  }
  ws["lower"] = lo;
  ws["upper"] = hi;
  doc["workspace"] = ws;
  if (scenario.hasFreeRegions) {
    doc["free_regions"] = regionsToJson(scenario.freeRegions);
  } else {
    doc["obstacles"] = regionsToJson(scenario.obstacles);
  }
  json start = json::array(), goal = json::array();
  for (Eigen::Index k = 0; k < scenario.start.size(); ++k) {
    start.push_back(scenario.start(k));
    goal.push_back(scenario.goal(k));
  }
  doc["start"] = start;
  doc["goal"] = goal;
  doc["name"] = scenario.name;
  return doc.dump(2);
}

void saveScenario(const Scenario& scenario,
                  const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw ScenarioParseError("cannot write " + path.string());
  }
  out << scenarioToJson(scenario) << "\n";
}

}  // namespace hzmp
