#include "hzmp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace hzmp {

namespace {

// Parameter interval of segment u + t(v-u), t in [0,1], inside the convex
// CCW polygon; empty when the segment misses it.
std::pair<double, double> clipSegmentToPolygon(const Vec& u, const Vec& v,
                                               const ConvexRegion& poly) {
  double tLo = 0.0, tHi = 1.0;
  const auto& verts = poly.vertices;
  for (size_t i = 0; i < verts.size(); ++i) {
    const Vec& a = verts[i];
    const Vec& b = verts[(i + 1) % verts.size()];
    // Inside is the left side: n.(x - a) >= 0 with n the inward normal.
    const double nx = -(b(1) - a(1));
    const double ny = b(0) - a(0);
    const double fu = nx * (u(0) - a(0)) + ny * (u(1) - a(1));
    const double fv = nx * (v(0) - a(0)) + ny * (v(1) - a(1));
    const double df = fv - fu;
    if (std::abs(df) < 1e-15) {
      if (fu < 0) return {1.0, 0.0};  // entirely outside this half-plane
      continue;
    }
    const double tCross = -fu / df;
    if (df > 0) {
      tLo = std::max(tLo, tCross);
    } else {
      tHi = std::min(tHi, tCross);
    }
    if (tLo > tHi) return {1.0, 0.0};
  }
  return {tLo, tHi};
}

bool segmentCrossesInterior(const Vec& u, const Vec& v,
                            const ConvexRegion& poly) {
  auto [tLo, tHi] = clipSegmentToPolygon(u, v, poly);
  if (tHi - tLo <= 1e-9) return false;
  const Vec mid = u + 0.5 * (tLo + tHi) * (v - u);
  return regionContainsInterior2d(poly, mid, 1e-9);
}

}  // namespace

double visibilityGraphOracle(const Scenario& scenario) {
  if (scenario.dimension != 2 || scenario.hasFreeRegions) {
    throw std::invalid_argument(
        "visibilityGraphOracle: needs a 2D obstacle scenario");
  }

  std::vector<ConvexRegion> obstacles;
  for (const auto& obs : scenario.obstacles) {
    auto clipped = clipToBox2d(obs.vertices, scenario.workspace);
    if (clipped.size() >= 3) {
      ConvexRegion r{clipped};
      makeCcw2d(r);
      if (regionArea2d(r) > 1e-12) obstacles.push_back(std::move(r));
    }
  }

  std::vector<Vec> nodes = {scenario.start, scenario.goal};
  for (const auto& obs : obstacles) {
    for (const Vec& v : obs.vertices) nodes.push_back(v);
  }
  const int n = static_cast<int>(nodes.size());

  // Endpoints inside an obstacle interior cannot be connected at all.
  for (int endpoint = 0; endpoint < 2; ++endpoint) {
    for (const auto& obs : obstacles) {
      if (regionContainsInterior2d(obs, nodes[static_cast<size_t>(endpoint)])) {
        throw UnreachableError("visibilityGraphOracle: endpoint inside an obstacle");
      }
    }
  }

  auto visible = [&](int i, int j) {
    const Vec& u = nodes[static_cast<size_t>(i)];
    const Vec& v = nodes[static_cast<size_t>(j)];
    for (const auto& obs : obstacles) {
      if (segmentCrossesInterior(u, v, obs)) return false;
    }
    return true;
  };

  // Dijkstra over the (dense) visibility graph.
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(static_cast<size_t>(n), kInf);
  std::vector<char> settled(static_cast<size_t>(n), 0);
  using Entry = std::pair<double, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  dist[0] = 0.0;
  queue.push({0.0, 0});
  while (!queue.empty()) {
    const auto [d, i] = queue.top();
    queue.pop();
    if (settled[static_cast<size_t>(i)]) continue;
    settled[static_cast<size_t>(i)] = 1;
    if (i == 1) return d;
    for (int j = 0; j < n; ++j) {
      if (settled[static_cast<size_t>(j)]) continue;
      const double w =
          (nodes[static_cast<size_t>(j)] - nodes[static_cast<size_t>(i)]).norm();
      if (d + w >= dist[static_cast<size_t>(j)]) continue;
      if (!visible(i, j)) continue;
      dist[static_cast<size_t>(j)] = d + w;
      queue.push({d + w, j});
    }
  }
  throw UnreachableError("visibilityGraphOracle: goal not reachable");
}

}  // namespace hzmp
