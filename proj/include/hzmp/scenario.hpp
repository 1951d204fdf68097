#ifndef HZMP_SCENARIO_HPP_
#define HZMP_SCENARIO_HPP_

#include "hzmp/decompose.hpp"
#include "hzmp/types.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace hzmp {

/**
 * @brief Planning scene: workspace box plus either 2D obstacle polygons
 * (free space is decomposed) or precomputed convex free regions (any
 * dimension, ingested as-is).
 */
struct Scenario {
  int dimension = 2;
  Box workspace;
  std::vector<ConvexRegion> obstacles;
  std::vector<ConvexRegion> freeRegions;
  bool hasFreeRegions = false;
  Vec start;
  Vec goal;
  std::string name;
};

/**
 * @brief Parses and validates a scenario file (UTF-8 JSON).
 *
 * Schema: {"dimension":int, "workspace":{"lower":[..],"upper":[..]},
 * "obstacles":[{"vertices":[[..],..]}], "free_regions":[...],
 * "start":[..], "goal":[..], "name":str} with exactly one of
 * obstacles/free_regions present.
 *
 * Obstacle pairs with overlapping interiors raise MergeRequired (listing
 * the offending pairs); geometric checks beyond that are left to the
 * planner.
 */
Scenario loadScenario(const std::filesystem::path& path);

/// Same validation applied to an in-memory JSON document.
Scenario parseScenario(const std::string& jsonText);

std::string scenarioToJson(const Scenario& scenario);

void saveScenario(const Scenario& scenario,
                  const std::filesystem::path& path);

}  // namespace hzmp

#endif  // HZMP_SCENARIO_HPP_
