#ifndef HZMP_PLANNER_HPP_
#define HZMP_PLANNER_HPP_

#include "hzmp/adjacency.hpp"
#include "hzmp/informed.hpp"
#include "hzmp/sampling.hpp"
#include "hzmp/scenario.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace hzmp {

struct PlannerParams {
  int nMax = 50;                 // max iterations
  int nS = 100;                  // samples per shared face
  std::uint64_t seed = 0;
  SamplerKind sampler = SamplerKind::hitAndRun();
  int maxPaths = 64;
  int maxLen = -1;               // < 0: number of leaves
  int convergenceWindow = 3;
  double convergenceRelTol = 1e-4;
  int threads = 0;               // 0: HZPLAN_THREADS or hardware
  bool refineContinuous = false; // optional waypoint post-pass
  int enumerationCap = 20;
};

/// Waypoint path through a leaf sequence; cost is the sum of segment norms.
struct WaypointPath {
  std::vector<Vec> waypoints;  // s_1 .. s_{k-1}, one per shared face
  CandidatePath leafSequence;
  double cost = 0.0;
};

enum class PlanStatus { Solved, Unreachable };

struct IterationRow {
  int iteration;    // 1-based
  int pathId;       // index into the candidate path list
  double cost;      // this path's cost at this iteration
  double bestCost;  // incumbent after the iteration's reduction
  int inactiveLeaves;
};

struct PruneStatsRow {
  int iteration;
  int inactive = 0;
  int partial = 0;
  int active = 0;
  int survivingPaths = 0;
};

struct PhaseTimes {
  double decompose = 0.0;
  double construct = 0.0;
  double enumerate = 0.0;
  double adjacency = 0.0;
  double faces = 0.0;
  double iterate = 0.0;
};

struct PlanResult {
  PlanStatus status = PlanStatus::Unreachable;
  WaypointPath bestPath;
  double bestCost = 0.0;
  std::vector<IterationRow> trace;
  std::vector<PruneStatsRow> pruneStats;
  PhaseTimes wallTimes;
  int iterations = 0;

  // Context for plotting and reporting.
  std::vector<ConvexRegion> regions;
  LeafGraph graph;
  std::optional<InformedSet> informed;
  int startLeaf = 0;
  int goalLeaf = 0;
};

/// Sum of segment lengths xs -> s_1 -> ... -> s_{k-1} -> xg.
double pathCost(const std::vector<Vec>& waypoints, const Vec& xs,
                const Vec& xg);

/**
 * @brief Exact minimizer over the sampled waypoint product set, by dynamic
 * programming on the layered sample graph (O(k nS^2)); ties resolve toward
 * the lexicographically smallest sample indices.
 */
WaypointPath optimizeWaypoints(const CandidatePath& path,
                               const std::vector<std::vector<Vec>>& samples,
                               const Vec& xs, const Vec& xg);

/// Replaces best when candidate improves by more than 1e-12.
bool updateGlobalBest(std::optional<WaypointPath>& best,
                      const WaypointPath& candidate);

/**
 * @brief Full HZ-MP run: decomposition, leaf enumeration, adjacency, path
 * enumeration, then iterative face sampling with informed pruning.
 *
 * Deterministic for fixed (scenario, params) regardless of worker count.
 */
PlanResult plan(const Scenario& scenario, const PlannerParams& params);

}  // namespace hzmp

#endif  // HZMP_PLANNER_HPP_
