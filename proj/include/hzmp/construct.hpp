#ifndef HZMP_CONSTRUCT_HPP_
#define HZMP_CONSTRUCT_HPP_

#include "hzmp/decompose.hpp"
#include "hzmp/sets.hpp"

#include <vector>

namespace hzmp {

/// Nonempty constrained zonotope obtained from one feasible binary assignment.
struct Leaf {
  int id = 0;             // 1-based, sequential in enumeration order
  Vec binaryAssignment;   // entries in {-1, +1}
  ConstrainedZonotope set;
  Box boxBound;           // tight axis-aligned bound, cached at enumeration
};

/**
 * @brief Unified hybrid zonotope over a union of V-rep polytopes.
 *
 * Continuous factors carry the convex-combination weights of the unique
 * vertices (plus nonnegative slack factors), binary factors one-hot select
 * the region; everything is expressed in the [-1, 1] factor normalization.
 * Fixing the binary block to the k-th one-hot assignment yields a leaf whose
 * member set is exactly the hull of region k's vertices.
 */
HybridZonotope buildHzFromVrep(const VRepDecomposition& d);

/**
 * @brief All nonempty leaves of a hybrid zonotope, with sequential ids.
 *
 * Depth-first search over the binary tree with LP-relaxation pruning; the
 * +1 branch is explored first, so a one-hot structured set enumerates its
 * regions in order. Binary blocks wider than enumerationCap are accepted
 * only when a one-hot selector row is detected; otherwise
 * EnumerationBudgetExceeded is thrown.
 */
std::vector<Leaf> enumerateLeaves(const HybridZonotope& hz,
                                  int enumerationCap = 20);

/// Smallest leaf id containing x; throws StateInObstacle when none does.
int findContainingLeaf(const Vec& x, const std::vector<Leaf>& leaves,
                       double tol = kFeasTol);

/// Tight axis-aligned bound via per-coordinate support LPs.
Box czTightBox(const ConstrainedZonotope& z);

}  // namespace hzmp

#endif  // HZMP_CONSTRUCT_HPP_
