#ifndef HZMP_POLYTOPE_HPP_
#define HZMP_POLYTOPE_HPP_

#include "hzmp/types.hpp"

#include <vector>

namespace hzmp {

/**
 * @brief Factor polytope {xi : A xi = b, ||xi||_inf <= 1} with implied
 * equalities made explicit.
 *
 * Interval contraction (hull consistency on the equality rows) tightens the
 * per-coordinate intervals without removing any feasible point. Coordinates
 * whose interval collapses are pinned and substituted out; the remaining
 * system is expressed over the free coordinates only. The reduced feasible
 * set is in exact one-to-one correspondence with the original one.
 */
struct ReducedPolytope {
  int fullDim = 0;
  std::vector<int> freeIdx;    // free coordinate indices into the full vector
  Vec pinnedValue;             // full length; entries at free indices are 0
  std::vector<char> isPinned;  // full length
  Mat A;                       // reduced equalities over free coordinates
  Vec b;
  Vec lo, hi;                  // contracted bounds per free coordinate
  bool provenEmpty = false;

  int freeDim() const { return static_cast<int>(freeIdx.size()); }

  /// Reassembles a full factor vector from a free-coordinate point.
  Vec lift(const Vec& freePoint) const {
    Vec full = pinnedValue;
    for (int k = 0; k < freeDim(); ++k) full(freeIdx[k]) = freePoint(k);
    return full;
  }

  Vec restrictToFree(const Vec& fullPoint) const {
    Vec out(freeDim());
    for (int k = 0; k < freeDim(); ++k) out(k) = fullPoint(freeIdx[k]);
    return out;
  }
};

ReducedPolytope reduceFactorPolytope(const Mat& A, const Vec& b,
                                     double pinTol = kSnapTol);

}  // namespace hzmp

#endif  // HZMP_POLYTOPE_HPP_
