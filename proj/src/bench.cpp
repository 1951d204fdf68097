#include "hzmp/report.hpp"

#include "hzmp/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>

namespace hzmp {

namespace {

bool traceMonotone(const PlanResult& result) {
  double last = std::numeric_limits<double>::infinity();
  for (const IterationRow& row : result.trace) {
    if (row.bestCost > last + 1e-12) return false;
    last = row.bestCost;
  }
  return true;
}

}  // namespace

BenchSummary runBenchmark(const std::filesystem::path& scenarioDir,
                          const PlannerParams& params,
                          const std::vector<std::uint64_t>& seeds,
                          std::ostream& out, double maxMeanGapPercent,
                          const std::filesystem::path& csvOut) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(scenarioDir)) {
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) {
    throw ScenarioParseError("runBenchmark: no scenario files in " +
                             scenarioDir.string());
  }

  BenchSummary summary;
  out << "scenario            seed      cost        oracle      gap%   iters  time[s]\n";
  for (const auto& file : files) {
    const Scenario scenario = loadScenario(file);
    double oracleCost = std::numeric_limits<double>::quiet_NaN();
    bool oracleAvailable = false;
    if (scenario.dimension == 2 && !scenario.hasFreeRegions) {
      try {
        oracleCost = visibilityGraphOracle(scenario);
        oracleAvailable = true;
      } catch (const UnreachableError&) {
        oracleAvailable = false;
      }
    }

    for (std::uint64_t seed : seeds) {
      PlannerParams runParams = params;
      runParams.seed = seed;
      BenchRow row;
      row.scenario = scenario.name;
      row.seed = seed;

      const auto t0 = std::chrono::steady_clock::now();
      const PlanResult result = plan(scenario, runParams);
      row.wallTime =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
              .count();
      row.iterations = result.iterations;
      row.solved = result.status == PlanStatus::Solved;
      row.bestCostMonotone = traceMonotone(result);
      if (!row.bestCostMonotone) summary.ok = false;
      if (row.solved) {
        row.cost = result.bestCost;
        if (oracleAvailable) {
          row.oracleCost = oracleCost;
          row.gapPercent = 100.0 * (row.cost - oracleCost) / oracleCost;
          if (row.cost < oracleCost - 1e-9) summary.ok = false;  // impossible
        }
      }

      out << std::left << std::setw(20) << row.scenario << std::setw(10)
          << row.seed;
      if (row.solved) {
        out << std::setw(12) << std::setprecision(6) << std::fixed << row.cost;
        if (oracleAvailable) {
          out << std::setw(12) << row.oracleCost << std::setw(7)
              << std::setprecision(2) << row.gapPercent;
        } else {
          out << std::setw(12) << "n/a" << std::setw(7) << "n/a";
        }
      } else {
        out << std::setw(12) << "unreachable" << std::setw(12) << "-"
            << std::setw(7) << "-";
      }
      out << std::setw(7) << row.iterations << std::setprecision(3)
          << std::fixed << row.wallTime << "\n";
      out.unsetf(std::ios::floatfield);
      summary.rows.push_back(row);
    }
  }

  // Per-scenario aggregates and the mean-gap gate.
  std::map<std::string, std::vector<const BenchRow*>> byScenario;
  for (const BenchRow& row : summary.rows) {
    byScenario[row.scenario].push_back(&row);
  }
  out << "\nscenario            runs  mean_gap%  min_gap%  max_gap%\n";
  for (const auto& [name, rows] : byScenario) {
    double sum = 0.0, lo = 1e300, hi = -1e300;
    int counted = 0;
    for (const BenchRow* row : rows) {
      if (std::isnan(row->gapPercent)) continue;
      sum += row->gapPercent;
      lo = std::min(lo, row->gapPercent);
      hi = std::max(hi, row->gapPercent);
      ++counted;
    }
    out << std::left << std::setw(20) << name << std::setw(6) << rows.size();
    if (counted > 0) {
      const double mean = sum / counted;
      out << std::setprecision(3) << std::fixed << std::setw(11) << mean
          << std::setw(10) << lo << std::setw(10) << hi << "\n";
      out.unsetf(std::ios::floatfield);
      if (mean > maxMeanGapPercent) summary.ok = false;
    } else {
      out << std::setw(11) << "n/a" << std::setw(10) << "n/a" << std::setw(10)
          << "n/a" << "\n";
    }
  }

  if (!csvOut.empty()) {
    std::ofstream csv(csvOut);
    csv << "scenario,seed,solved,cost,oracle,gap_percent,iterations,wall_time\n";
    for (const BenchRow& row : summary.rows) {
      csv << row.scenario << "," << row.seed << "," << (row.solved ? 1 : 0)
          << "," << row.cost << "," << row.oracleCost << "," << row.gapPercent
          << "," << row.iterations << "," << row.wallTime << "\n";
    }
  }
  return summary;
}

}  // namespace hzmp
