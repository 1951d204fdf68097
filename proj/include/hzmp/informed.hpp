#ifndef HZMP_INFORMED_HPP_
#define HZMP_INFORMED_HPP_

#include "hzmp/adjacency.hpp"
#include "hzmp/sets.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace hzmp {

/**
 * @brief Informed set {x : ||x - xs|| + ||x - xg|| <= cBest} in both the
 * direct form and the ellipsoid/ellipsotope forms.
 *
 * Semi-major axis a = cBest/2 along dhat, semi-minor b = sqrt(a^2 -
 * ||d||^2/4). When cBest equals the straight-line distance the set collapses
 * to the segment; the Q-form ellipsoid is then unavailable and membership
 * queries fall back to an explicit axis decomposition.
 */
struct InformedSet {
  Vec xs, xg;
  double cBest = 0.0;
  Vec center, dhat;
  double a = 0.0;
  double bAxis = 0.0;
  std::optional<Ellipsoid> ellipsoid;  // absent in the degenerate case
  Ellipsotope ellipsotope;

  /// Direct two-focus membership.
  bool contains(const Vec& x) const {
    return (xs - x).norm() + (x - xg).norm() <= cBest + 1e-12;
  }

  /// Q-form membership (axis decomposition when degenerate).
  bool containsEllipsoidForm(const Vec& x) const;
};

enum class LeafLabel { Inactive, Partial, Active };

/// Algorithm that rebuilds the informed set from the incumbent cost.
InformedSet updateReachableSet(const Vec& xs, const Vec& xg, double cBest);

/**
 * @brief Classifies a leaf against the informed set.
 *
 * Inactive requires a certificate that min ||x-xs||+||x-xg|| over the leaf
 * exceeds cBest, obtained by Frank-Wolfe over the factor polytope with
 * linear subproblems solved by LP; the certified lower bound is
 * (best value - duality gap). Active uses the conservative box-in-ellipsoid
 * test. Everything else is Partial, including budget exhaustion.
 */
LeafLabel classifyLeaf(const InformedSet& informed, const Leaf& leaf,
                       int fwMaxIter = 200, double fwGapTol = 1e-6);

/**
 * @brief Drops Inactive leaves from the adjacency and marks candidate paths
 * through them as pruned; start/goal leaves are never pruned. When no path
 * survives, paths are re-enumerated on the pruned graph.
 */
std::pair<LeafGraph, std::vector<CandidatePath>> pruneGraph(
    const LeafGraph& graph, const InformedSet& informed,
    const std::vector<LeafLabel>& labels, int iStart, int iGoal,
    std::vector<CandidatePath> paths, int maxPaths = 64, int maxLen = -1);

}  // namespace hzmp

#endif  // HZMP_INFORMED_HPP_
