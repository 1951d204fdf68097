#ifndef HZMP_DECOMPOSE_HPP_
#define HZMP_DECOMPOSE_HPP_

#include "hzmp/types.hpp"

#include <vector>

namespace hzmp {

/**
 * @brief Convex region given by its vertices (the region is their hull).
 *
 * 2D regions are stored counterclockwise.
 */
struct ConvexRegion {
  std::vector<Vec> vertices;

  int dim() const {
    return vertices.empty() ? 0 : static_cast<int>(vertices[0].size());
  }
};

/// Vertex matrix V (n x n_v) plus 0/1 incidence matrix M (n_v x n_F).
struct VRepDecomposition {
  Mat V;
  Mat M;
  int regionCount = 0;
};

/**
 * @brief Exact convex partition of a rectangular 2D workspace minus convex
 * obstacle interiors.
 *
 * Vertical (trapezoidal) decomposition over the obstacle vertices, followed
 * by merging of horizontally adjacent cells that share a full vertical edge
 * whenever the merged cell stays convex. Obstacles are clipped to the
 * workspace; coincident vertices are snapped within kSnapTol.
 *
 * Returned regions have pairwise disjoint interiors and cover the free
 * space; ordering follows the sweep (left to right, bottom to top).
 * Throws EmptyFreeSpace when nothing remains.
 */
std::vector<ConvexRegion> decomposeFreeSpace2D(
    const Box& workspace, const std::vector<ConvexRegion>& obstacles);

/// Collects unique vertices (snap tolerance) and region incidence.
VRepDecomposition buildVrep(const std::vector<ConvexRegion>& regions,
                            double snapTol = kSnapTol);

// --- geometry helpers (2D unless noted) --------------------------------------

double regionArea2d(const ConvexRegion& region);

/// Hull membership; 2D uses half-plane tests, general dimension uses an LP.
bool regionContains(const ConvexRegion& region, const Vec& x,
                    double tol = 1e-9);

/// Strict interior test for 2D convex polygons.
bool regionContainsInterior2d(const ConvexRegion& region, const Vec& x,
                              double tol = 1e-9);

/// Clips a convex polygon to the half-plane n.x <= d (2D).
std::vector<Vec> clipToHalfPlane(const std::vector<Vec>& polygon,
                                 const Vec& n, double d);

std::vector<Vec> clipToBox2d(const std::vector<Vec>& polygon, const Box& box);

/// Reorders 2D vertices counterclockwise (input may be any polygon order).
void makeCcw2d(ConvexRegion& region);

/// True when the interiors of two 2D convex regions overlap.
bool regionsInteriorOverlap2d(const ConvexRegion& a, const ConvexRegion& b,
                              double areaTol = 1e-9);

}  // namespace hzmp

#endif  // HZMP_DECOMPOSE_HPP_
