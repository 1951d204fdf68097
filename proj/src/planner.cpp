#include "hzmp/planner.hpp"

#include "hzmp/lp.hpp"
#include "hzmp/parallel.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>

namespace hzmp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double secondsSince(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::pair<int, int> faceKey(int a, int b) {
  return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

}  // namespace

double pathCost(const std::vector<Vec>& waypoints, const Vec& xs,
                const Vec& xg) {
  if (waypoints.empty()) return (xg - xs).norm();
  double cost = (waypoints.front() - xs).norm();
  for (size_t j = 0; j + 1 < waypoints.size(); ++j) {
    cost += (waypoints[j + 1] - waypoints[j]).norm();
  }
  cost += (xg - waypoints.back()).norm();
  return cost;
}

WaypointPath optimizeWaypoints(const CandidatePath& path,
                               const std::vector<std::vector<Vec>>& samples,
                               const Vec& xs, const Vec& xg) {
  WaypointPath out;
  out.leafSequence = path;
  const int k = static_cast<int>(samples.size());
  if (k == 0) {
    out.cost = (xg - xs).norm();
    return out;
  }
  for (const auto& faceSamples : samples) {
    if (faceSamples.empty()) {
      throw std::invalid_argument("optimizeWaypoints: face without samples");
    }
  }

  // Backward pass: g[j][l] = best cost from sample l of face j to the goal.
  // Strict < in every argmin makes ties resolve to the smallest index, so
  // the reconstructed index tuple is the lexicographically smallest optimum.
  std::vector<std::vector<double>> g(static_cast<size_t>(k));
  g[static_cast<size_t>(k - 1)].resize(samples[static_cast<size_t>(k - 1)].size());
  for (size_t l = 0; l < samples[static_cast<size_t>(k - 1)].size(); ++l) {
    g[static_cast<size_t>(k - 1)][l] =
        (xg - samples[static_cast<size_t>(k - 1)][l]).norm();
  }
  for (int j = k - 2; j >= 0; --j) {
    const auto& cur = samples[static_cast<size_t>(j)];
    const auto& nxt = samples[static_cast<size_t>(j + 1)];
    g[static_cast<size_t>(j)].assign(cur.size(), kInf);
    for (size_t l = 0; l < cur.size(); ++l) {
      double best = kInf;
      for (size_t m = 0; m < nxt.size(); ++m) {
        const double v = (nxt[m] - cur[l]).norm() + g[static_cast<size_t>(j + 1)][m];
        if (v < best) best = v;
      }
      g[static_cast<size_t>(j)][l] = best;
    }
  }

  // Forward reconstruction.
  size_t pick = 0;
  double best = kInf;
  for (size_t l = 0; l < samples[0].size(); ++l) {
    const double v = (samples[0][l] - xs).norm() + g[0][l];
    if (v < best) {
      best = v;
      pick = l;
    }
  }
  out.waypoints.push_back(samples[0][pick]);
  for (int j = 1; j < k; ++j) {
    const Vec& prev = out.waypoints.back();
    const auto& cur = samples[static_cast<size_t>(j)];
    size_t next = 0;
    double bestStep = kInf;
    for (size_t m = 0; m < cur.size(); ++m) {
      const double v = (cur[m] - prev).norm() + g[static_cast<size_t>(j)][m];
      if (v < bestStep) {
        bestStep = v;
        next = m;
      }
    }
    out.waypoints.push_back(cur[next]);
  }
  out.cost = pathCost(out.waypoints, xs, xg);
  return out;
}

bool updateGlobalBest(std::optional<WaypointPath>& best,
                      const WaypointPath& candidate) {
  if (!std::isfinite(candidate.cost)) return false;
  if (best && candidate.cost >= best->cost - 1e-12) return false;
  best = candidate;
  return true;
}

namespace {

struct PathEvaluation {
  WaypointPath result;
  bool valid = false;
};

// Per-face sampling with the informed-set point filter; shortfall (fewer
// than nS accepted samples) is allowed as long as one survives.
std::vector<Vec> sampleFaceFiltered(const FacePolytope& fp, int nS,
                                    const SamplerKind& kind,
                                    std::uint64_t seed,
                                    const std::optional<InformedSet>& informed) {
  if (!informed) return sampleFace(fp, nS, kind, seed);

  std::vector<Vec> kept;
  kept.reserve(static_cast<size_t>(nS));
  const int nt = static_cast<int>(fp.tangent.cols());
  if (nt == 0) {
    const Vec point = fp.toWorkspace(fp.anchor);
    if (informed->contains(point)) {
      kept.assign(static_cast<size_t>(nS), point);
    }
    return kept;
  }

  WalkState st{fp.anchor, Rng(seed), 0, false};
  const int burnIn = 10 * nt;
  const int thinning = std::max(1, nt);
  auto step = [&](WalkState s) {
    return kind.tag == SamplerKind::Tag::HitAndRun
               ? hitAndRunStep(fp, std::move(s))
               : billiardWalkStep(fp, std::move(s), kind);
  };
  for (int i = 0; i < burnIn; ++i) st = step(std::move(st));
  const long maxDraws = 10L * nS;
  for (long draw = 0; draw < maxDraws && static_cast<int>(kept.size()) < nS;
       ++draw) {
    for (int i = 0; i < thinning; ++i) st = step(std::move(st));
    Vec point = fp.toWorkspace(st.current);
    if (informed->contains(point)) kept.push_back(std::move(point));
  }
  return kept;
}

}  // namespace

PlanResult plan(const Scenario& scenario, const PlannerParams& params) {
  if (params.nMax < 1 || params.nS < 1) {
    throw std::invalid_argument("plan: nMax and nS must be >= 1");
  }
  PlanResult res;
  const Vec& xs = scenario.start;
  const Vec& xg = scenario.goal;

  auto t0 = std::chrono::steady_clock::now();
  res.regions = scenario.hasFreeRegions
                    ? scenario.freeRegions
                    : decomposeFreeSpace2D(scenario.workspace, scenario.obstacles);
  res.wallTimes.decompose = secondsSince(t0);

  t0 = std::chrono::steady_clock::now();
  const VRepDecomposition vrep = buildVrep(res.regions);
  const HybridZonotope hz = buildHzFromVrep(vrep);
  res.wallTimes.construct = secondsSince(t0);

  t0 = std::chrono::steady_clock::now();
  std::vector<Leaf> leaves = enumerateLeaves(hz, params.enumerationCap);
  res.wallTimes.enumerate = secondsSince(t0);
  if (leaves.empty()) {
    throw EmptyFreeSpace("plan: hybrid zonotope has no nonempty leaves");
  }

  t0 = std::chrono::steady_clock::now();
  LeafGraph graph = adjacencyMatrix(hz, std::move(leaves), params.threads);
  res.wallTimes.adjacency = secondsSince(t0);

  res.startLeaf = findContainingLeaf(xs, graph.leaves);
  res.goalLeaf = findContainingLeaf(xg, graph.leaves);

  const int maxLen = params.maxLen < 0 ? static_cast<int>(graph.leaves.size())
                                       : params.maxLen;
  std::vector<CandidatePath> paths =
      enumeratePaths(graph, res.startLeaf, res.goalLeaf, params.maxPaths, maxLen);
  if (paths.empty()) {
    res.status = PlanStatus::Unreachable;
    res.graph = std::move(graph);
    return res;
  }

  t0 = std::chrono::steady_clock::now();
  computeSharedFaces(hz, graph, params.threads);
  // Walk domains for every face that appears on a candidate path.
  std::map<std::pair<int, int>, FacePolytope> walkDomains;
  for (const auto& path : paths) {
    for (size_t j = 0; j + 1 < path.leafSequence.size(); ++j) {
      const auto key = faceKey(path.leafSequence[j], path.leafSequence[j + 1]);
      if (!walkDomains.count(key)) {
        walkDomains.emplace(key, buildFacePolytope(graph.faces.at(key)));
      }
    }
  }
  res.wallTimes.faces = secondsSince(t0);

  std::optional<WaypointPath> best;
  std::optional<InformedSet> informed;
  int inactiveCount = 0;
  double prevBest = kInf;
  int convergedStreak = 0;

  t0 = std::chrono::steady_clock::now();
  for (int iter = 1; iter <= params.nMax; ++iter) {
    const int numPaths = static_cast<int>(paths.size());
    std::vector<PathEvaluation> evals(static_cast<size_t>(numPaths));
    std::vector<char> wasPruned(static_cast<size_t>(numPaths), 0);
    for (int p = 0; p < numPaths; ++p) {
      wasPruned[static_cast<size_t>(p)] = paths[static_cast<size_t>(p)].pruned;
    }

    // Fork-join per iteration: path evaluations are pure; the best-cost and
    // informed-set update happen in the serialized reduction below.
    parallelFor(
        numPaths,
        [&](int p) {
          const CandidatePath& path = paths[static_cast<size_t>(p)];
          if (path.pruned) return;
          PathEvaluation& eval = evals[static_cast<size_t>(p)];
          const size_t k = path.leafSequence.size();
          if (k <= 1) {
            eval.result.leafSequence = path;
            eval.result.cost = (xg - xs).norm();
            eval.valid = true;
            return;
          }
          std::vector<std::vector<Vec>> samples(k - 1);
          for (size_t j = 0; j + 1 < k; ++j) {
            const auto key =
                faceKey(path.leafSequence[j], path.leafSequence[j + 1]);
            const std::uint64_t faceSeed = Rng::mix(
                Rng::mix(params.seed, static_cast<std::uint64_t>(p)),
                Rng::mix(static_cast<std::uint64_t>(j),
                         static_cast<std::uint64_t>(iter)));
            samples[j] = sampleFaceFiltered(walkDomains.at(key), params.nS,
                                            params.sampler, faceSeed, informed);
            if (samples[j].empty()) return;  // fully filtered out
          }
          eval.result = optimizeWaypoints(path, samples, xs, xg);
          eval.valid = true;
        },
        params.threads);

    // Serialized reduction, in path order, so the outcome is independent of
    // scheduling.
    bool improved = false;
    for (int p = 0; p < numPaths; ++p) {
      if (evals[static_cast<size_t>(p)].valid) {
        improved |= updateGlobalBest(best, evals[static_cast<size_t>(p)].result);
      }
    }

    if (improved && best) {
      informed = updateReachableSet(xs, xg, best->cost);
      std::vector<LeafLabel> labels(graph.leaves.size(), LeafLabel::Partial);
      parallelFor(
          static_cast<int>(graph.leaves.size()),
          [&](int li) {
            labels[static_cast<size_t>(li)] =
                classifyLeaf(*informed, graph.leaves[static_cast<size_t>(li)]);
          },
          params.threads);
      auto [prunedGraph, prunedPaths] =
          pruneGraph(graph, *informed, labels, res.startLeaf, res.goalLeaf,
                     std::move(paths), params.maxPaths, maxLen);
      graph = std::move(prunedGraph);
      paths = std::move(prunedPaths);

      PruneStatsRow stats;
      stats.iteration = iter;
      for (const LeafLabel label : labels) {
        if (label == LeafLabel::Inactive) ++stats.inactive;
        else if (label == LeafLabel::Partial) ++stats.partial;
        else ++stats.active;
      }
      for (const auto& path : paths) {
        if (!path.pruned) ++stats.survivingPaths;
      }
      inactiveCount = stats.inactive;
      res.pruneStats.push_back(stats);
    }

    const double bestCost = best ? best->cost : kInf;
    for (int p = 0; p < numPaths; ++p) {
      if (wasPruned[static_cast<size_t>(p)]) continue;  // not evaluated
      IterationRow row;
      row.iteration = iter;
      row.pathId = p;
      row.cost = evals[static_cast<size_t>(p)].valid
                     ? evals[static_cast<size_t>(p)].result.cost
                     : kInf;
      row.bestCost = bestCost;
      row.inactiveLeaves = inactiveCount;
      res.trace.push_back(row);
    }
    res.iterations = iter;

    if (best) {
      const double relImprovement =
          std::isfinite(prevBest)
              ? (prevBest - best->cost) / std::max(prevBest, 1e-30)
              : kInf;
      if (relImprovement < params.convergenceRelTol) {
        if (++convergedStreak >= params.convergenceWindow) {
          prevBest = best->cost;
          break;
        }
      } else {
        convergedStreak = 0;
      }
      prevBest = best->cost;
    }
  }
  res.wallTimes.iterate = secondsSince(t0);

  if (!best) {
    res.status = PlanStatus::Unreachable;
    res.graph = std::move(graph);
    return res;
  }

  if (params.refineContinuous) {
    // Coordinate-descent post-pass: each waypoint is refined over its face
    // by a short Frank-Wolfe run on the local two-segment cost. Off by
    // default to keep runs comparable to the pure sampled-argmin semantics.
    WaypointPath refined = *best;
    const auto& ids = refined.leafSequence.leafSequence;
    for (int sweep = 0; sweep < 3; ++sweep) {
      for (size_t j = 0; j + 1 < ids.size(); ++j) {
        const Vec& prev = j == 0 ? xs : refined.waypoints[j - 1];
        const Vec& next =
            j + 1 == refined.waypoints.size() ? xg : refined.waypoints[j + 1];
        const auto key = faceKey(ids[j], ids[j + 1]);
        const FacePolytope& fp = walkDomains.at(key);
        if (fp.tangent.cols() == 0) continue;
        // Frank-Wolfe on the face for min |x-prev| + |x-next|, started from
        // the face anchor (always feasible).
        Vec xi = fp.anchor;
        LinearProgram lp;
        lp.eqMatrix = fp.reduced.A;
        lp.eqRhs = fp.reduced.b;
        lp.lower = fp.reduced.lo;
        lp.upper = fp.reduced.hi;
        Mat gFree(fp.face.dim(), fp.reduced.freeDim());
        for (int k2 = 0; k2 < fp.reduced.freeDim(); ++k2) {
          gFree.col(k2) = fp.face.G.col(fp.reduced.freeIdx[k2]);
        }
        const Vec gBase =
            fp.face.c + fp.face.G * fp.reduced.pinnedValue;
        for (int it2 = 0; it2 < 30; ++it2) {
          const Vec x = gFree * xi + gBase;
          Vec grad = Vec::Zero(x.size());
          if ((x - prev).norm() > 1e-12) grad += (x - prev).normalized();
          if ((x - next).norm() > 1e-12) grad += (x - next).normalized();
          lp.objective = -(gFree.transpose() * grad);
          const LpOutcome sub = solveLp(lp);
          if (sub.status != LpStatus::Optimal) break;
          const Vec dir = sub.point - xi;
          double loT = 0.0, hiT = 1.0;
          for (int ls = 0; ls < 32; ++ls) {
            const double t1 = loT + (hiT - loT) / 3.0;
            const double t2 = hiT - (hiT - loT) / 3.0;
            const Vec x1 = gFree * (xi + t1 * dir) + gBase;
            const Vec x2 = gFree * (xi + t2 * dir) + gBase;
            const double f1 = (x1 - prev).norm() + (x1 - next).norm();
            const double f2 = (x2 - prev).norm() + (x2 - next).norm();
            if (f1 < f2) hiT = t2; else loT = t1;
          }
          xi += 0.5 * (loT + hiT) * dir;
        }
        refined.waypoints[j] = gFree * xi + gBase;
      }
    }
    refined.cost = pathCost(refined.waypoints, xs, xg);
    if (refined.cost < best->cost) best = refined;
  }

  res.status = PlanStatus::Solved;
  res.bestPath = *best;
  res.bestCost = best->cost;
  res.graph = std::move(graph);
  res.informed = std::move(informed);
  return res;
}

}  // namespace hzmp
