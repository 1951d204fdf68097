#include "hzmp/oracle.hpp"
#include "hzmp/planner.hpp"
#include "hzmp/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUnreachable = 2;
constexpr int kExitInvalidInput = 3;
constexpr int kExitBudget = 4;

hzmp::SamplerKind samplerFromName(const std::string& name) {
  if (name == "hit-and-run") return hzmp::SamplerKind::hitAndRun();
  if (name == "billiard") return hzmp::SamplerKind::billiard();
  throw CLI::ValidationError("--sampler", "expected hit-and-run or billiard");
}

int runPlan(const std::string& scenarioPath, hzmp::PlannerParams params,
            const std::string& svgOut, const std::string& traceOut,
            const std::vector<int>& svgAxes) {
  const hzmp::Scenario scenario = hzmp::loadScenario(scenarioPath);
  const hzmp::PlanResult result = hzmp::plan(scenario, params);

  if (!traceOut.empty()) {
    std::ofstream trace(traceOut);
    hzmp::writeTraceCsv(result, trace);
  }
  if (!svgOut.empty()) {
    std::optional<std::pair<int, int>> projection;
    if (svgAxes.size() == 2) projection = {svgAxes[0], svgAxes[1]};
    hzmp::emitSvg({scenario, params, result}, svgOut, projection);
  }

  if (result.status == hzmp::PlanStatus::Unreachable) {
    std::cout << "unreachable: no leaf path connects start and goal\n";
    return kExitUnreachable;
  }
  std::cout << "scenario:   " << scenario.name << "\n";
  std::cout << "leaves:     " << result.graph.leaves.size() << "\n";
  std::cout << "iterations: " << result.iterations << "\n";
  std::cout << "best cost:  " << std::setprecision(12) << result.bestCost
            << "\n";
  std::cout << "leaf path: ";
  for (int id : result.bestPath.leafSequence.leafSequence) {
    std::cout << " " << id;
  }
  std::cout << "\nwaypoints:\n";
  for (const hzmp::Vec& w : result.bestPath.waypoints) {
    std::cout << "  (";
    for (Eigen::Index k = 0; k < w.size(); ++k) {
      std::cout << (k ? ", " : "") << w(k);
    }
    std::cout << ")\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hybrid-zonotope motion planner"};
  app.require_subcommand(1);

  std::string scenarioPath, svgOut, traceOut, samplerName = "hit-and-run";
  std::vector<int> svgAxes;
  hzmp::PlannerParams params;

  auto* planCmd = app.add_subcommand("plan", "Plan a path for one scenario");
  planCmd->add_option("scenario", scenarioPath, "Scenario JSON file")
      ->required();
  planCmd->add_option("--iters", params.nMax, "Max iterations");
  planCmd->add_option("--samples", params.nS, "Samples per shared face");
  planCmd->add_option("--seed", params.seed, "Random seed");
  planCmd->add_option("--sampler", samplerName, "hit-and-run | billiard");
  planCmd->add_option("--max-paths", params.maxPaths, "Path enumeration cap");
  planCmd->add_option("--svg", svgOut, "Write an SVG rendering");
  planCmd->add_option("--trace", traceOut, "Write the per-iteration CSV trace");
  planCmd->add_option("--svg-axes", svgAxes, "Projection axis pair for 3D")
      ->expected(2);
  planCmd->add_flag("--refine", params.refineContinuous,
                    "Continuous waypoint refinement post-pass");

  std::string oracleScenario;
  auto* oracleCmd =
      app.add_subcommand("oracle", "Exact 2D shortest-path oracle");
  oracleCmd->add_option("scenario", oracleScenario, "Scenario JSON file")
      ->required();

  std::string benchDir, benchCsv;
  std::vector<std::uint64_t> seeds = {0};
  double maxMeanGap = 1.0;
  auto* benchCmd = app.add_subcommand("bench", "Benchmark a scenario folder");
  benchCmd->add_option("dir", benchDir, "Directory with scenario JSON files")
      ->required();
  benchCmd->add_option("--seeds", seeds, "Seeds to run")->delimiter(',');
  benchCmd->add_option("--samples", params.nS, "Samples per shared face");
  benchCmd->add_option("--iters", params.nMax, "Max iterations");
  benchCmd->add_option("--max-mean-gap", maxMeanGap,
                       "Mean optimality-gap threshold in percent");
  benchCmd->add_option("--csv", benchCsv, "Summary CSV output path");

  CLI11_PARSE(app, argc, argv);

  try {
    params.sampler = samplerFromName(samplerName);
    if (planCmd->parsed()) {
      return runPlan(scenarioPath, params, svgOut, traceOut, svgAxes);
    }
    if (oracleCmd->parsed()) {
      const hzmp::Scenario scenario = hzmp::loadScenario(oracleScenario);
      std::cout << std::setprecision(12)
                << hzmp::visibilityGraphOracle(scenario) << "\n";
      return kExitOk;
    }
    if (benchCmd->parsed()) {
      const hzmp::BenchSummary summary =
          hzmp::runBenchmark(benchDir, params, seeds, std::cout, maxMeanGap,
                             std::filesystem::path(benchCsv));
      return summary.ok ? kExitOk : 1;
    }
  } catch (const hzmp::UnreachableError& e) {
    std::cerr << "unreachable: " << e.what() << "\n";
    return kExitUnreachable;
  } catch (const hzmp::EnumerationBudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const hzmp::SolverStall& e) {
    std::cerr << "solver stall: " << e.what() << "\n";
    return kExitBudget;
  } catch (const hzmp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }
  return kExitOk;
}
