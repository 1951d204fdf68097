#include "hzmp/polytope.hpp"

#include <algorithm>
#include <cmath>

namespace hzmp {

namespace {
constexpr double kDilation = 1e-10;  // keeps contraction strictly sound
constexpr int kMaxPasses = 64;
}  // namespace

ReducedPolytope reduceFactorPolytope(const Mat& A, const Vec& b,
                                     double pinTol) {
  const int n = static_cast<int>(A.cols());
  const int m = static_cast<int>(A.rows());

  Vec lo = Vec::Constant(n, -1.0);
  Vec hi = Vec::Constant(n, 1.0);
  ReducedPolytope out;
  out.fullDim = n;

  bool changed = true;
  for (int pass = 0; pass < kMaxPasses && changed; ++pass) {
    changed = false;
    for (int r = 0; r < m; ++r) {
      // Interval sum of the row, then peel off one term at a time.
      double sumLo = 0.0, sumHi = 0.0;
      for (int j = 0; j < n; ++j) {
        const double a = A(r, j);
        if (a == 0.0) continue;
        sumLo += std::min(a * lo(j), a * hi(j));
        sumHi += std::max(a * lo(j), a * hi(j));
      }
      for (int j = 0; j < n; ++j) {
        const double a = A(r, j);
        if (a == 0.0) continue;
        const double termLo = std::min(a * lo(j), a * hi(j));
        const double termHi = std::max(a * lo(j), a * hi(j));
        const double restLo = sumLo - termLo;
        const double restHi = sumHi - termHi;
        double candLo = (b(r) - restHi) / a;
        double candHi = (b(r) - restLo) / a;
        if (a < 0.0) std::swap(candLo, candHi);
        candLo -= kDilation;
        candHi += kDilation;
        if (candLo > lo(j) + 1e-12) {
          lo(j) = candLo;
          changed = true;
        }
        if (candHi < hi(j) - 1e-12) {
          hi(j) = candHi;
          changed = true;
        }
        if (lo(j) > hi(j) + pinTol) {
          out.provenEmpty = true;
          return out;
        }
      }
    }
  }

  out.isPinned.assign(n, 0);
  out.pinnedValue = Vec::Zero(n);
  for (int j = 0; j < n; ++j) {
    if (hi(j) - lo(j) <= pinTol) {
      out.isPinned[j] = 1;
      out.pinnedValue(j) =
          std::clamp(0.5 * (lo(j) + hi(j)), -1.0, 1.0);
    } else {
      out.freeIdx.push_back(j);
    }
  }

  const int nf = out.freeDim();
  out.lo.resize(nf);
  out.hi.resize(nf);
  for (int k = 0; k < nf; ++k) {
    out.lo(k) = std::max(lo(out.freeIdx[k]), -1.0);
    out.hi(k) = std::min(hi(out.freeIdx[k]), 1.0);
  }

  // Rewrite rows over the free coordinates; rows that lose all support must
  // be consistent, otherwise the polytope is empty.
  std::vector<int> keptRows;
  Vec shifted = b - A * out.pinnedValue;
  for (int r = 0; r < m; ++r) {
    bool hasFree = false;
    for (int k = 0; k < nf && !hasFree; ++k) {
      hasFree = A(r, out.freeIdx[k]) != 0.0;
    }
    if (hasFree) {
      keptRows.push_back(r);
    } else if (std::abs(shifted(r)) > 1e-7 * (1.0 + std::abs(b(r)))) {
      out.provenEmpty = true;
      return out;
    }
  }
  out.A.resize(static_cast<Eigen::Index>(keptRows.size()), nf);
  out.b.resize(static_cast<Eigen::Index>(keptRows.size()));
  for (size_t i = 0; i < keptRows.size(); ++i) {
    for (int k = 0; k < nf; ++k) {
      out.A(static_cast<Eigen::Index>(i), k) = A(keptRows[i], out.freeIdx[k]);
    }
    out.b(static_cast<Eigen::Index>(i)) = shifted(keptRows[i]);
  }
  return out;
}

}  // namespace hzmp
