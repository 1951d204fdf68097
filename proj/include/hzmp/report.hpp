#ifndef HZMP_REPORT_HPP_
#define HZMP_REPORT_HPP_

#include "hzmp/planner.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace hzmp {

/// One completed run, bundled for persistence and plotting.
struct RunRecord {
  Scenario scenario;
  PlannerParams params;
  PlanResult result;
};

/**
 * @brief Per-iteration trace as CSV with the fixed header
 * `iteration,path_id,cost,best_cost,inactive_leaves`; rows ordered by
 * iteration then path id. Formatting is locale-independent and stable, so
 * identical runs produce byte-identical files.
 */
void writeTraceCsv(const PlanResult& result, std::ostream& out);

/**
 * @brief SVG rendering with layers: workspace, obstacles, leaf outlines,
 * shared faces, best path, and the informed ellipse at the final cBest.
 *
 * 2D scenes render directly; other dimensions require a projection axis
 * pair and raise NotPlottable without one. All coordinates inside the root
 * group are workspace units (the ellipse rx/ry equal the informed set's a
 * and b).
 */
void emitSvg(const RunRecord& record, const std::filesystem::path& out,
             std::optional<std::pair<int, int>> projection = std::nullopt);

struct BenchRow {
  std::string scenario;
  std::uint64_t seed = 0;
  bool solved = false;
  double cost = 0.0;
  double oracleCost = std::numeric_limits<double>::quiet_NaN();
  double gapPercent = std::numeric_limits<double>::quiet_NaN();
  int iterations = 0;
  double wallTime = 0.0;
  bool bestCostMonotone = true;
};

struct BenchSummary {
  std::vector<BenchRow> rows;
  bool ok = true;  // every acceptance threshold held
};

/**
 * @brief Runs every scenario in a directory for each seed, compares against
 * the visibility-graph oracle where available, and prints a per-run table
 * plus per-scenario aggregates.
 *
 * Fails (summary.ok = false) when a trace is non-monotone, a cost undercuts
 * the oracle, or a scenario's mean gap exceeds maxMeanGapPercent.
 */
BenchSummary runBenchmark(const std::filesystem::path& scenarioDir,
                          const PlannerParams& params,
                          const std::vector<std::uint64_t>& seeds,
                          std::ostream& out,
                          double maxMeanGapPercent = 1.0,
                          const std::filesystem::path& csvOut = {});

}  // namespace hzmp

#endif  // HZMP_REPORT_HPP_
