#ifndef HZMP_ADJACENCY_HPP_
#define HZMP_ADJACENCY_HPP_

#include "hzmp/construct.hpp"
#include "hzmp/sets.hpp"

#include <atomic>
#include <map>
#include <utility>
#include <vector>

namespace hzmp {

enum class ContactKind { Disjoint, Tangent, Overlap };

/**
 * @brief Result of the tangent-vs-overlap test between two leaves.
 *
 * deltaStar is the maximal uniform contraction of the factor boxes that
 * keeps the intersection system feasible; positive values certify interior
 * overlap, (numerically) zero values boundary contact.
 */
struct ContactReport {
  ContactKind kind = ContactKind::Disjoint;
  double deltaStar = 0.0;
  Vec xiC;       // witness factors of leaf i (valid when feasible)
  Vec deltaXiC;  // witness factor shift to leaf j
  bool hasWitness = false;
};

/// Leaves with their adjacency matrix and shared faces.
struct LeafGraph {
  std::vector<Leaf> leaves;
  Eigen::MatrixXi adjacency;  // symmetric, zero diagonal; indexed by id-1
  std::map<std::pair<int, int>, ConstrainedZonotope> faces;  // key (i,j), i<j

  const Leaf& leafById(int id) const {
    return leaves[static_cast<size_t>(id - 1)];
  }
};

/// Simple leaf-id path through the adjacency graph.
struct CandidatePath {
  std::vector<int> leafSequence;
  bool pruned = false;
};

/// Counters for the intersection shortcut, used by instrumented tests.
struct AdjacencyStats {
  std::atomic<long> lpCalls{0};
  std::atomic<long> shortcutHits{0};
};

/**
 * @brief Image-space consistency of a binary shift: whether N dXi_b lies in
 * the column space of M = [Gc; Ac], decided by least-squares residual.
 */
bool consistencyCheck(const HybridZonotope& hz, const Vec& deltaXiB,
                      double tol = kConsistencyTol);

/**
 * @brief Nonemptiness of leaf_i ∩ leaf_j via the coupled factor system.
 *
 * Runs the consistency shortcut first; when it fails the leaves cannot
 * intersect and no LP is solved.
 */
bool leafIntersectFeasible(const HybridZonotope& hz, const Leaf& i,
                           const Leaf& j, AdjacencyStats* stats = nullptr);

/**
 * @brief Tangent/overlap classification by maximizing the uniform box
 * contraction delta. Requires leafIntersectFeasible(i, j).
 */
ContactReport contactType(const HybridZonotope& hz, const Leaf& i,
                          const Leaf& j, double contactTol = kContactTol);

/**
 * @brief Pairwise adjacency over all leaves (faces are not filled here).
 *
 * Pair tests run concurrently; the resulting matrix is symmetric with a
 * zero diagonal by convention and deterministic regardless of scheduling.
 */
LeafGraph adjacencyMatrix(const HybridZonotope& hz, std::vector<Leaf> leaves,
                          int threads = 0);

/**
 * @brief Shared face of two adjacent leaves as a generalized intersection
 * under the identity map; affine dimension at most n-1.
 */
ConstrainedZonotope sharedFace(const HybridZonotope& hz, const Leaf& i,
                               const Leaf& j);

/// Fills graph.faces for every adjacent pair.
void computeSharedFaces(const HybridZonotope& hz, LeafGraph& graph,
                        int threads = 0);

/**
 * @brief All simple paths from iStart to iGoal by breadth-first search,
 * ordered by increasing length then lexicographically; capped at maxPaths
 * results and maxLen leaves per path (maxLen < 0 means |leaves|).
 */
std::vector<CandidatePath> enumeratePaths(const LeafGraph& graph, int iStart,
                                          int iGoal, int maxPaths = 64,
                                          int maxLen = -1);

}  // namespace hzmp

#endif  // HZMP_ADJACENCY_HPP_
