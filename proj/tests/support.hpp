#ifndef HZMP_TESTS_SUPPORT_HPP_
#define HZMP_TESTS_SUPPORT_HPP_

#include "hzmp/lp.hpp"
#include "hzmp/sets.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace hzmp::testsupport {

inline Vec randomVec(std::mt19937_64& rng, int n, double lo = -1.0,
                     double hi = 1.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Vec v(n);
  for (int i = 0; i < n; ++i) v(i) = dist(rng);
  return v;
}

inline Mat randomMat(std::mt19937_64& rng, int rows, int cols,
                     double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Mat m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) m(r, c) = dist(rng);
  }
  return m;
}

/**
 * Brute-force LP oracle: enumerates the vertices of
 * {eqMatrix x = eqRhs, lower <= x <= upper} by activating every choice of
 * n - m box bounds and solving the remaining square system. Only meant for
 * tiny test problems (n <= 4).
 */
inline double vertexEnumerationMax(const LinearProgram& lp, bool* feasible) {
  const int n = lp.numVars();
  const int m = lp.numConstraints();
  *feasible = false;
  double best = -std::numeric_limits<double>::infinity();

  const int fixCount = n - m;
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;

  // Choose which coordinates sit at a bound (combinations), then the bound
  // side for each (2^fixCount patterns).
  std::vector<int> comb(fixCount);
  std::function<void(int, int)> chooseCoords = [&](int start, int depth) {
    if (depth == fixCount) {
      for (int mask = 0; mask < (1 << fixCount); ++mask) {
        Vec x = Vec::Zero(n);
        std::vector<char> fixed(n, 0);
        for (int k = 0; k < fixCount; ++k) {
          const int coord = comb[k];
          fixed[coord] = 1;
          x(coord) = (mask >> k) & 1 ? lp.upper(coord) : lp.lower(coord);
        }
        // Solve the equalities for the free coordinates.
        std::vector<int> freeIdx;
        for (int i = 0; i < n; ++i) {
          if (!fixed[i]) freeIdx.push_back(i);
        }
        if (static_cast<int>(freeIdx.size()) != m) continue;
        Mat a(m, m);
        Vec rhs = lp.eqRhs;
        for (int r = 0; r < m; ++r) {
          for (int c = 0; c < m; ++c) a(r, c) = lp.eqMatrix(r, freeIdx[c]);
          for (int i = 0; i < n; ++i) {
            if (fixed[i]) rhs(r) -= lp.eqMatrix(r, i) * x(i);
          }
        }
        if (m > 0) {
          Eigen::FullPivLU<Mat> lu(a);
          if (!lu.isInvertible()) continue;
          const Vec sol = lu.solve(rhs);
          for (int c = 0; c < m; ++c) x(freeIdx[c]) = sol(c);
        }
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) {
          ok = x(i) >= lp.lower(i) - 1e-9 && x(i) <= lp.upper(i) + 1e-9;
        }
        if (m > 0) {
          ok = ok && (lp.eqMatrix * x - lp.eqRhs).cwiseAbs().maxCoeff() < 1e-7;
        }
        if (ok) {
          *feasible = true;
          best = std::max(best, lp.objective.dot(x));
        }
      }
      return;
    }
    for (int i = start; i <= n - (fixCount - depth); ++i) {
      comb[depth] = i;
      chooseCoords(i + 1, depth + 1);
    }
  };
  if (fixCount >= 0) chooseCoords(0, 0);
  return best;
}

/// Random member of a constrained zonotope via rejection-free factor LPs is
/// overkill for testing; this draws random feasible factors by projecting a
/// random target onto the factor polytope with an LP in a random direction.
inline Vec randomMemberFactor(const ConstrainedZonotope& z,
                              std::mt19937_64& rng) {
  LinearProgram lp;
  lp.objective = randomVec(rng, z.numGenerators());
  lp.eqMatrix = z.A;
  lp.eqRhs = z.b;
  lp.lower = Vec::Constant(z.numGenerators(), -1.0);
  lp.upper = Vec::Constant(z.numGenerators(), 1.0);
  LpOutcome out = solveLp(lp);
  if (out.status != LpStatus::Optimal) {
    throw std::runtime_error("randomMemberFactor: empty set");
  }
  return out.point;
}

/// Random convex combination of factor-polytope vertices: dense-enough
/// member sampling for soundness checks.
inline Vec randomMember(const ConstrainedZonotope& z, std::mt19937_64& rng,
                        int blend = 3) {
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  Vec xi = Vec::Zero(z.numGenerators());
  double total = 0.0;
  for (int k = 0; k < blend; ++k) {
    const double w = dist(rng);
    xi += w * randomMemberFactor(z, rng);
    total += w;
  }
  xi /= total;
  return z.map(xi);
}

}  // namespace hzmp::testsupport

#endif  // HZMP_TESTS_SUPPORT_HPP_
