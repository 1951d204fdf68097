#include "hzmp/decompose.hpp"

#include "hzmp/lp.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>

namespace hzmp {

double regionArea2d(const ConvexRegion& region) {
  const auto& v = region.vertices;
  double twice = 0.0;
  for (size_t i = 0; i < v.size(); ++i) {
    const Vec& a = v[i];
    const Vec& b = v[(i + 1) % v.size()];
    twice += a(0) * b(1) - b(0) * a(1);
  }
  return 0.5 * std::abs(twice);
}

bool regionContains(const ConvexRegion& region, const Vec& x, double tol) {
  if (region.dim() == 2 && x.size() == 2) {
    const auto& v = region.vertices;
    if (v.size() < 3) {
      // Degenerate: fall through to the LP (hull of a segment or point).
    } else {
      for (size_t i = 0; i < v.size(); ++i) {
        const Vec& a = v[i];
        const Vec& b = v[(i + 1) % v.size()];
        const double cross = (b(0) - a(0)) * (x(1) - a(1)) -
                             (b(1) - a(1)) * (x(0) - a(0));
        if (cross < -tol * (1.0 + (b - a).norm())) return false;
      }
      return true;
    }
  }
  // Convex-combination feasibility: V lambda = x, sum lambda = 1, lambda >= 0.
  const int n = static_cast<int>(x.size());
  const int nv = static_cast<int>(region.vertices.size());
  if (nv == 0) return false;
  LinearProgram lp;
  lp.objective = Vec::Zero(nv);
  lp.eqMatrix.resize(n + 1, nv);
  for (int j = 0; j < nv; ++j) {
    lp.eqMatrix.col(j).head(n) = region.vertices[static_cast<size_t>(j)];
    lp.eqMatrix(n, j) = 1.0;
  }
  lp.eqRhs.resize(n + 1);
  lp.eqRhs << x, 1.0;
  lp.lower = Vec::Zero(nv);
  lp.upper = Vec::Ones(nv);
  return solveLp(lp, std::max(tol, kFeasTol)).status == LpStatus::Optimal;
}

bool regionContainsInterior2d(const ConvexRegion& region, const Vec& x,
                              double tol) {
  const auto& v = region.vertices;
  if (v.size() < 3) return false;
  for (size_t i = 0; i < v.size(); ++i) {
    const Vec& a = v[i];
    const Vec& b = v[(i + 1) % v.size()];
    const double cross =
        (b(0) - a(0)) * (x(1) - a(1)) - (b(1) - a(1)) * (x(0) - a(0));
    if (cross <= tol * (1.0 + (b - a).norm())) return false;
  }
  return true;
}

std::vector<Vec> clipToHalfPlane(const std::vector<Vec>& polygon, const Vec& n,
                                 double d) {
  std::vector<Vec> out;
  const size_t count = polygon.size();
  for (size_t i = 0; i < count; ++i) {
    const Vec& cur = polygon[i];
    const Vec& nxt = polygon[(i + 1) % count];
    const double sc = n.dot(cur) - d;
    const double sn = n.dot(nxt) - d;
    if (sc <= 0) out.push_back(cur);
    if ((sc < 0 && sn > 0) || (sc > 0 && sn < 0)) {
      const double t = sc / (sc - sn);
      out.push_back(cur + t * (nxt - cur));
    }
  }
  return out;
}

std::vector<Vec> clipToBox2d(const std::vector<Vec>& polygon, const Box& box) {
  std::vector<Vec> p = polygon;
  p = clipToHalfPlane(p, makeVec({1, 0}), box.upper(0));
  p = clipToHalfPlane(p, makeVec({-1, 0}), -box.lower(0));
  p = clipToHalfPlane(p, makeVec({0, 1}), box.upper(1));
  p = clipToHalfPlane(p, makeVec({0, -1}), -box.lower(1));
  return p;
}

void makeCcw2d(ConvexRegion& region) {
  auto& v = region.vertices;
  if (v.size() < 3) return;
  double twice = 0.0;
  for (size_t i = 0; i < v.size(); ++i) {
    const Vec& a = v[i];
    const Vec& b = v[(i + 1) % v.size()];
    twice += a(0) * b(1) - b(0) * a(1);
  }
  if (twice < 0) std::reverse(v.begin(), v.end());
}

bool regionsInteriorOverlap2d(const ConvexRegion& a, const ConvexRegion& b,
                              double areaTol) {
  std::vector<Vec> p = a.vertices;
  const auto& v = b.vertices;
  for (size_t i = 0; i < v.size() && !p.empty(); ++i) {
    const Vec& s = v[i];
    const Vec& t = v[(i + 1) % v.size()];
    // Inside of a CCW polygon is to the left of each edge.
    Vec n = makeVec({t(1) - s(1), -(t(0) - s(0))});
    p = clipToHalfPlane(p, n, n.dot(s));
  }
  if (p.size() < 3) return false;
  ConvexRegion inter{p};
  return regionArea2d(inter) > areaTol;
}

namespace {

struct ObstacleBand {
  double loA, hiA;  // y-interval at the slab's left edge
  double loB, hiB;  // at the right edge
  double mid() const { return 0.25 * (loA + hiA + loB + hiB); }
};

// Open cell while sweeping: lower/upper chains from left to right.
struct SweepCell {
  std::vector<Vec> lower;
  std::vector<Vec> upper;
  int order = 0;

  double rightX() const { return lower.back()(0); }
  double rightLo() const { return lower.back()(1); }
  double rightHi() const { return upper.back()(1); }

  double lastLowerSlope() const {
    const Vec& a = lower[lower.size() - 2];
    const Vec& b = lower.back();
    return (b(1) - a(1)) / (b(0) - a(0));
  }
  double lastUpperSlope() const {
    const Vec& a = upper[upper.size() - 2];
    const Vec& b = upper.back();
    return (b(1) - a(1)) / (b(0) - a(0));
  }

  ConvexRegion finish() const {
    ConvexRegion region;
    for (const Vec& p : lower) region.vertices.push_back(p);
    for (auto it = upper.rbegin(); it != upper.rend(); ++it) {
      region.vertices.push_back(*it);
    }
    // Remove duplicates from degenerate (triangle) ends.
    std::vector<Vec> dedup;
    for (const Vec& p : region.vertices) {
      if (dedup.empty() || (dedup.back() - p).norm() > kSnapTol) {
        dedup.push_back(p);
      }
    }
    while (dedup.size() > 1 && (dedup.front() - dedup.back()).norm() <= kSnapTol) {
      dedup.pop_back();
    }
    region.vertices = std::move(dedup);
    return region;
  }
};

void appendChainPoint(std::vector<Vec>& chain, const Vec& p) {
  if (chain.size() >= 2) {
    const Vec& a = chain[chain.size() - 2];
    const Vec& b = chain.back();
    const double cross =
        (b(0) - a(0)) * (p(1) - a(1)) - (b(1) - a(1)) * (p(0) - a(0));
    if (std::abs(cross) <= kSnapTol * (1.0 + (p - a).norm())) {
      chain.back() = p;  // collinear: extend the edge instead of adding a vertex
      return;
    }
  }
  chain.push_back(p);
}

}  // namespace

std::vector<ConvexRegion> decomposeFreeSpace2D(
    const Box& workspace, const std::vector<ConvexRegion>& obstacles) {
  if (workspace.dim() != 2) {
    throw std::invalid_argument("decomposeFreeSpace2D: workspace must be 2D");
  }

  std::vector<std::vector<Vec>> clipped;
  for (const auto& obs : obstacles) {
    auto poly = clipToBox2d(obs.vertices, workspace);
    if (poly.size() >= 3) {
      ConvexRegion r{poly};
      if (regionArea2d(r) > 1e-12) {
        makeCcw2d(r);
        clipped.push_back(r.vertices);
      }
    }
  }

  // Slab boundaries: obstacle vertex abscissae plus the workspace sides,
  // snapped within kSnapTol.
  std::vector<double> xs = {workspace.lower(0), workspace.upper(0)};
  for (const auto& poly : clipped) {
    for (const Vec& v : poly) xs.push_back(v(0));
  }
  std::sort(xs.begin(), xs.end());
  std::vector<double> slabs;
  for (double x : xs) {
    if (slabs.empty() || x - slabs.back() > kSnapTol) slabs.push_back(x);
  }

  const double yLo = workspace.lower(1);
  const double yHi = workspace.upper(1);

  std::vector<SweepCell> open;
  std::vector<std::pair<int, ConvexRegion>> done;
  int order = 0;

  for (size_t s = 0; s + 1 < slabs.size(); ++s) {
    const double xa = slabs[s];
    const double xb = slabs[s + 1];

    std::vector<ObstacleBand> bands;
    for (const auto& poly : clipped) {
      auto strip = clipToHalfPlane(poly, makeVec({1, 0}), xb);
      strip = clipToHalfPlane(strip, makeVec({-1, 0}), -xa);
      if (strip.size() < 3) continue;
      ConvexRegion sr{strip};
      if (regionArea2d(sr) <= 1e-12) continue;
      ObstacleBand band{yHi, yLo, yHi, yLo};
      for (const Vec& v : strip) {
        if (std::abs(v(0) - xa) <= kSnapTol) {
          band.loA = std::min(band.loA, v(1));
          band.hiA = std::max(band.hiA, v(1));
        }
        if (std::abs(v(0) - xb) <= kSnapTol) {
          band.loB = std::min(band.loB, v(1));
          band.hiB = std::max(band.hiB, v(1));
        }
      }
      if (band.loA > band.hiA) band.loA = band.hiA = 0.5 * (band.loB + band.hiB);
      if (band.loB > band.hiB) band.loB = band.hiB = 0.5 * (band.loA + band.hiA);
      bands.push_back(band);
    }
    std::sort(bands.begin(), bands.end(),
              [](const ObstacleBand& a, const ObstacleBand& b) {
                return a.mid() < b.mid();
              });

    // Free gaps between consecutive bands (plus bottom and top margins).
    struct Gap {
      double loA, loB, hiA, hiB;
    };
    std::vector<Gap> gaps;
    double curA = yLo, curB = yLo;
    for (const auto& band : bands) {
      gaps.push_back({curA, curB, band.loA, band.loB});
      curA = std::max(curA, band.hiA);
      curB = std::max(curB, band.hiB);
    }
    gaps.push_back({curA, curB, yHi, yHi});

    std::vector<SweepCell> nextOpen;
    for (const auto& gap : gaps) {
      const double hA = gap.hiA - gap.loA;
      const double hB = gap.hiB - gap.loB;
      if (hA < -kSnapTol || hB < -kSnapTol) continue;  // fully blocked
      const double area = 0.5 * (std::max(0.0, hA) + std::max(0.0, hB)) * (xb - xa);
      if (area <= 1e-12) continue;

      const double loSlope = (gap.loB - gap.loA) / (xb - xa);
      const double hiSlope = (gap.hiB - gap.hiA) / (xb - xa);

      // Try to extend an open cell whose full right edge matches this gap's
      // left edge and whose chains stay convex through the junction.
      int match = -1;
      for (size_t k = 0; k < open.size(); ++k) {
        const SweepCell& cell = open[k];
        if (std::abs(cell.rightX() - xa) > kSnapTol) continue;
        if (std::abs(cell.rightLo() - gap.loA) > kSnapTol) continue;
        if (std::abs(cell.rightHi() - gap.hiA) > kSnapTol) continue;
        if (cell.lastLowerSlope() > loSlope + kSnapTol) continue;
        if (cell.lastUpperSlope() < hiSlope - kSnapTol) continue;
        match = static_cast<int>(k);
        break;
      }
      SweepCell cell;
      if (match >= 0) {
        cell = std::move(open[static_cast<size_t>(match)]);
        open.erase(open.begin() + match);
      } else {
        cell.order = order++;
        cell.lower.push_back(makeVec({xa, gap.loA}));
        cell.upper.push_back(makeVec({xa, gap.hiA}));
      }
      appendChainPoint(cell.lower, makeVec({xb, gap.loB}));
      appendChainPoint(cell.upper, makeVec({xb, gap.hiB}));
      nextOpen.push_back(std::move(cell));
    }
    for (auto& cell : open) done.emplace_back(cell.order, cell.finish());
    open = std::move(nextOpen);
  }
  for (auto& cell : open) done.emplace_back(cell.order, cell.finish());

  // Cells close in arbitrary order; restore sweep (creation) order.
  std::sort(done.begin(), done.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<ConvexRegion> regions;
  regions.reserve(done.size());
  for (auto& [ord, region] : done) regions.push_back(std::move(region));

  if (regions.empty()) {
    throw EmptyFreeSpace("decomposeFreeSpace2D: obstacles cover the workspace");
  }
  for (auto& r : regions) makeCcw2d(r);
  return regions;
}

VRepDecomposition buildVrep(const std::vector<ConvexRegion>& regions,
                            double snapTol) {
  if (regions.empty()) {
    throw std::invalid_argument("buildVrep: no regions");
  }
  const int n = regions.front().dim();
  for (const auto& r : regions) {
    if (r.dim() != n) {
      throw std::invalid_argument("buildVrep: mixed dimensions");
    }
    if (static_cast<int>(r.vertices.size()) < n + 1) {
      throw DegenerateRegion("buildVrep: region with fewer than n+1 vertices");
    }
  }

  std::vector<Vec> unique;
  const int nf = static_cast<int>(regions.size());
  std::vector<std::vector<int>> incidence(static_cast<size_t>(nf));
  for (int f = 0; f < nf; ++f) {
    for (const Vec& v : regions[static_cast<size_t>(f)].vertices) {
      int idx = -1;
      for (size_t k = 0; k < unique.size(); ++k) {
        if ((unique[k] - v).lpNorm<Eigen::Infinity>() <= snapTol) {
          idx = static_cast<int>(k);
          break;
        }
      }
      if (idx < 0) {
        idx = static_cast<int>(unique.size());
        unique.push_back(v);
      }
      incidence[static_cast<size_t>(f)].push_back(idx);
    }
  }

  VRepDecomposition d;
  d.regionCount = nf;
  d.V.resize(n, static_cast<Eigen::Index>(unique.size()));
  for (size_t k = 0; k < unique.size(); ++k) {
    d.V.col(static_cast<Eigen::Index>(k)) = unique[k];
  }
  d.M = Mat::Zero(static_cast<Eigen::Index>(unique.size()), nf);
  for (int f = 0; f < nf; ++f) {
    for (int idx : incidence[static_cast<size_t>(f)]) {
      d.M(idx, f) = 1.0;
    }
  }
  return d;
}

}  // namespace hzmp
