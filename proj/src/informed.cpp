#include "hzmp/informed.hpp"

#include "hzmp/lp.hpp"
#include "hzmp/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace hzmp {

bool InformedSet::containsEllipsoidForm(const Vec& x) const {
  if (ellipsoid) {
    return ellipsoidContains(*ellipsoid, x);
  }
  const Vec rel = x - center;
  const double along = dhat.dot(rel);
  const double perp = (rel - along * dhat).norm();
  return std::abs(along) <= a + 1e-9 && perp <= 1e-9;
}

InformedSet updateReachableSet(const Vec& xs, const Vec& xg, double cBest) {
  if (xs.size() != xg.size()) {
    throw std::invalid_argument("updateReachableSet: dimension mismatch");
  }
  const Vec d = xg - xs;
  const double dist = d.norm();
  if (dist < 1e-15) {
    throw std::invalid_argument("updateReachableSet: coincident endpoints");
  }
  if (cBest < dist - 1e-12) {
    throw DegenerateInformedSet(
        "updateReachableSet: cBest below the straight-line distance");
  }

  InformedSet e;
  e.xs = xs;
  e.xg = xg;
  e.cBest = cBest;
  e.dhat = d / dist;
  e.center = 0.5 * (xs + xg);
  e.a = 0.5 * cBest;
  e.bAxis = std::sqrt(std::max(0.0, e.a * e.a - 0.25 * dist * dist));

  const int n = static_cast<int>(xs.size());
  Mat u = orthonormalCompletion(e.dhat);
  Mat g(n, n);
  g.col(0) = e.a * e.dhat;
  g.rightCols(n - 1) = e.bAxis * u;
  std::vector<int> block(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) block[static_cast<size_t>(k)] = k;
  e.ellipsotope = Ellipsotope(e.center, g, Mat(0, n), Vec(0), {block}, 2.0);

  if (e.bAxis > 1e-12 * std::max(1.0, e.a)) {
    const Mat proj = e.dhat * e.dhat.transpose();
    Mat q = proj / (e.a * e.a) +
            (Mat::Identity(n, n) - proj) / (e.bAxis * e.bAxis);
    q = 0.5 * (q + q.transpose());
    e.ellipsoid = Ellipsoid(e.center, q);
  }
  return e;
}

namespace {

double distanceToBox(const Box& box, const Vec& x) {
  double sq = 0.0;
  for (int k = 0; k < box.dim(); ++k) {
    const double d = std::max({box.lower(k) - x(k), x(k) - box.upper(k), 0.0});
    sq += d * d;
  }
  return std::sqrt(sq);
}

double twoFocusCost(const Vec& x, const Vec& xs, const Vec& xg) {
  return (x - xs).norm() + (x - xg).norm();
}

// Subgradient of ||x-xs|| + ||x-xg|| (zero term at a focus).
Vec twoFocusGradient(const Vec& x, const Vec& xs, const Vec& xg) {
  Vec g = Vec::Zero(x.size());
  const Vec ds = x - xs;
  const Vec dg = x - xg;
  if (ds.norm() > 1e-12) g += ds / ds.norm();
  if (dg.norm() > 1e-12) g += dg / dg.norm();
  return g;
}

// Certified Frank-Wolfe lower bound test: true when min f over the leaf
// provably exceeds cBest.
bool frankWolfeCertifiesExceeds(const Leaf& leaf, const Vec& xs, const Vec& xg,
                                double cBest, int maxIter, double gapTol) {
  ReducedPolytope red = reduceFactorPolytope(leaf.set.A, leaf.set.b);
  if (red.provenEmpty) return true;

  const Vec base = leaf.set.c + leaf.set.G * red.pinnedValue;
  const int nf = red.freeDim();
  if (nf == 0) {
    return twoFocusCost(base, xs, xg) > cBest;
  }
  Mat gFree(leaf.set.dim(), nf);
  for (int k = 0; k < nf; ++k) gFree.col(k) = leaf.set.G.col(red.freeIdx[k]);

  LinearProgram lp;
  lp.eqMatrix = red.A;
  lp.eqRhs = red.b;
  lp.lower = red.lo;
  lp.upper = red.hi;

  // Feasible start: any vertex.
  lp.objective = Vec::Zero(nf);
  LpOutcome start = solveLp(lp);
  if (start.status != LpStatus::Optimal) return true;
  Vec xi = start.point;

  for (int iter = 0; iter < maxIter; ++iter) {
    const Vec x = gFree * xi + base;
    const double f = twoFocusCost(x, xs, xg);
    if (f <= cBest) return false;  // a witness inside the informed set

    const Vec gradXi = gFree.transpose() * twoFocusGradient(x, xs, xg);
    lp.objective = -gradXi;  // linear minimization oracle
    LpOutcome sub = solveLp(lp);
    if (sub.status != LpStatus::Optimal) return true;
    const Vec v = sub.point;
    const double gap = gradXi.dot(xi - v);
    if (f - gap > cBest) return true;  // certified lower bound
    if (gap <= gapTol) {
      return f - gap > cBest;
    }

    // Exact-enough line search on the segment (f is convex along it).
    const Vec dirXi = v - xi;
    double loT = 0.0, hiT = 1.0;
    for (int ls = 0; ls < 48; ++ls) {
      const double t1 = loT + (hiT - loT) / 3.0;
      const double t2 = hiT - (hiT - loT) / 3.0;
      const double f1 = twoFocusCost(gFree * (xi + t1 * dirXi) + base, xs, xg);
      const double f2 = twoFocusCost(gFree * (xi + t2 * dirXi) + base, xs, xg);
      if (f1 < f2) {
        hiT = t2;
      } else {
        loT = t1;
      }
    }
    xi += 0.5 * (loT + hiT) * dirXi;
  }
  return false;  // budget exhausted without a certificate
}

}  // namespace

LeafLabel classifyLeaf(const InformedSet& informed, const Leaf& leaf,
                       int fwMaxIter, double fwGapTol) {
  const Vec& xs = informed.xs;
  const Vec& xg = informed.xg;

  // Cheap certified reject: min f over the bounding box already exceeds
  // cBest (box >= leaf, distances minimized separately).
  const double boxLower =
      distanceToBox(leaf.boxBound, xs) + distanceToBox(leaf.boxBound, xg);
  if (boxLower > informed.cBest) return LeafLabel::Inactive;

  // Conservative containment: interval upper bound of the quadratic form
  // over the bounding box.
  if (informed.ellipsoid) {
    const Mat& q = informed.ellipsoid->Q;
    const int n = leaf.boxBound.dim();
    Vec m(n);
    for (int k = 0; k < n; ++k) {
      m(k) = std::max(std::abs(leaf.boxBound.lower(k) - informed.center(k)),
                      std::abs(leaf.boxBound.upper(k) - informed.center(k)));
    }
    double bound = 0.0;
    for (int r = 0; r < n; ++r) {
      for (int s = 0; s < n; ++s) {
        bound += std::abs(q(r, s)) * m(r) * m(s);
      }
    }
    if (bound <= 1.0) return LeafLabel::Active;
  }

  if (frankWolfeCertifiesExceeds(leaf, xs, xg, informed.cBest, fwMaxIter,
                                 fwGapTol)) {
    return LeafLabel::Inactive;
  }
  return LeafLabel::Partial;
}

std::pair<LeafGraph, std::vector<CandidatePath>> pruneGraph(
    const LeafGraph& graph, const InformedSet& informed,
    const std::vector<LeafLabel>& labels, int iStart, int iGoal,
    std::vector<CandidatePath> paths, int maxPaths, int maxLen) {
  (void)informed;
  if (labels.size() != graph.leaves.size()) {
    throw std::invalid_argument("pruneGraph: label count mismatch");
  }

  std::set<int> inactiveIds;
  for (size_t k = 0; k < labels.size(); ++k) {
    const int id = graph.leaves[k].id;
    if (labels[k] == LeafLabel::Inactive && id != iStart && id != iGoal) {
      inactiveIds.insert(id);
    }
  }

  LeafGraph pruned;
  pruned.leaves = graph.leaves;
  pruned.adjacency = graph.adjacency;
  for (int id : inactiveIds) {
    pruned.adjacency.row(id - 1).setZero();
    pruned.adjacency.col(id - 1).setZero();
  }
  for (const auto& [key, face] : graph.faces) {
    if (!inactiveIds.count(key.first) && !inactiveIds.count(key.second)) {
      pruned.faces.emplace(key, face);
    }
  }

  bool anySurvivor = false;
  for (auto& path : paths) {
    if (path.pruned) continue;
    for (int id : path.leafSequence) {
      if (inactiveIds.count(id)) {
        path.pruned = true;
        break;
      }
    }
    anySurvivor = anySurvivor || !path.pruned;
  }
  if (!anySurvivor) {
    paths = enumeratePaths(pruned, iStart, iGoal, maxPaths, maxLen);
  }
  return {std::move(pruned), std::move(paths)};
}

}  // namespace hzmp
