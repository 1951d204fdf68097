#ifndef HZMP_ORACLE_HPP_
#define HZMP_ORACLE_HPP_

#include "hzmp/scenario.hpp"

namespace hzmp {

/**
 * @brief Exact Euclidean shortest-path length for a point robot in a 2D
 * polygonal scene, via Dijkstra on the visibility graph over obstacle
 * vertices (start and goal included as nodes).
 *
 * Edges are validated by segment-versus-obstacle-interior tests; touching
 * an obstacle boundary is allowed. Throws UnreachableError when the goal is
 * not connected.
 */
double visibilityGraphOracle(const Scenario& scenario);

}  // namespace hzmp

#endif  // HZMP_ORACLE_HPP_
