#include "hzmp/construct.hpp"

#include "hzmp/lp.hpp"
#include "hzmp/polytope.hpp"

#include <cmath>
#include <functional>

namespace hzmp {

HybridZonotope buildHzFromVrep(const VRepDecomposition& d) {
  const int n = static_cast<int>(d.V.rows());
  const int nv = static_cast<int>(d.V.cols());
  const int nf = d.regionCount;
  if (d.M.rows() != nv || d.M.cols() != nf || nv == 0 || nf == 0) {
    throw std::invalid_argument("buildHzFromVrep: inconsistent V-rep");
  }
  for (int f = 0; f < nf; ++f) {
    if (d.M.col(f).sum() < n + 1) {
      throw DegenerateRegion("buildHzFromVrep: region with fewer than n+1 vertices");
    }
  }

  const Vec rowSum = d.M.rowwise().sum();

  // [0,1]-normalized construction: weights lambda and slacks sigma in [0,1],
  // one-hot delta in {0,1}:
  //   x = V lambda,  1'lambda = 1,  1'delta = 1,
  //   lambda_i + rowSum_i sigma_i - (M delta)_i = 0.
  // The affine substitution lambda = (xi+1)/2 (same for sigma, delta) puts
  // everything into the [-1,1] factor normalization below.
  Mat gc01(n, 2 * nv);
  gc01 << d.V, Mat::Zero(n, nv);

  Mat ac01 = Mat::Zero(2 + nv, 2 * nv);
  ac01.row(0).head(nv).setOnes();
  ac01.block(2, 0, nv, nv).setIdentity();
  for (int i = 0; i < nv; ++i) ac01(2 + i, nv + i) = rowSum(i);

  Mat ab01 = Mat::Zero(2 + nv, nf);
  ab01.row(1).setOnes();
  ab01.bottomRows(nv) = -d.M;

  Vec b01 = Vec::Zero(2 + nv);
  b01(0) = 1.0;
  b01(1) = 1.0;

  Mat gc = 0.5 * gc01;
  Mat gb = Mat::Zero(n, nf);
  Vec c = 0.5 * gc01 * Vec::Ones(2 * nv);
  Mat ac = 0.5 * ac01;
  Mat ab = 0.5 * ab01;
  Vec b = b01 - 0.5 * (ac01 * Vec::Ones(2 * nv) + ab01 * Vec::Ones(nf));

  return HybridZonotope(std::move(gc), std::move(gb), std::move(c),
                        std::move(ac), std::move(ab), std::move(b));
}

Box czTightBox(const ConstrainedZonotope& z) {
  ReducedPolytope red = reduceFactorPolytope(z.A, z.b);
  if (red.provenEmpty) {
    throw std::invalid_argument("czTightBox: empty set");
  }
  const Vec base = z.c + z.G * red.pinnedValue;
  if (red.freeDim() == 0) {
    return Box(base, base);
  }
  Mat gFree(z.dim(), red.freeDim());
  for (int k = 0; k < red.freeDim(); ++k) gFree.col(k) = z.G.col(red.freeIdx[k]);

  Vec lo(z.dim()), hi(z.dim());
  LinearProgram lp;
  lp.eqMatrix = red.A;
  lp.eqRhs = red.b;
  lp.lower = red.lo;
  lp.upper = red.hi;
  for (int k = 0; k < z.dim(); ++k) {
    lp.objective = gFree.row(k).transpose();
    LpOutcome up = solveLp(lp);
    lp.objective = -gFree.row(k).transpose();
    LpOutcome down = solveLp(lp);
    if (up.status != LpStatus::Optimal || down.status != LpStatus::Optimal) {
      throw std::invalid_argument("czTightBox: empty set");
    }
    hi(k) = base(k) + up.value;
    lo(k) = base(k) - down.value;
  }
  return Box(lo, hi);
}

namespace {

// Relaxed feasibility with a fixed binary prefix: unfixed binaries become
// box factors alongside the continuous block.
bool prefixFeasible(const HybridZonotope& hz, const Vec& fixedPrefix) {
  const int fixed = static_cast<int>(fixedPrefix.size());
  const int nb = hz.numBinary();
  const int ng = hz.numContinuous();
  const int rest = nb - fixed;

  Mat a(hz.numConstraints(), ng + rest);
  a.leftCols(ng) = hz.Ac;
  if (rest > 0) a.rightCols(rest) = hz.Ab.rightCols(rest);
  Vec rhs = hz.b;
  if (fixed > 0) rhs -= hz.Ab.leftCols(fixed) * fixedPrefix;

  ReducedPolytope red = reduceFactorPolytope(a, rhs);
  if (red.provenEmpty) return false;
  if (red.freeDim() == 0) return true;
  LinearProgram lp;
  lp.objective = Vec::Zero(red.freeDim());
  lp.eqMatrix = red.A;
  lp.eqRhs = red.b;
  lp.lower = red.lo;
  lp.upper = red.hi;
  return solveLp(lp).status == LpStatus::Optimal;
}

// One-hot selector detection: a row with no continuous support whose binary
// coefficients are all equal and whose rhs forces exactly one +1 entry.
bool detectOneHot(const HybridZonotope& hz) {
  const int nb = hz.numBinary();
  for (int r = 0; r < hz.numConstraints(); ++r) {
    if (hz.Ac.row(r).cwiseAbs().maxCoeff() > 1e-12) continue;
    const double alpha = hz.Ab(r, 0);
    if (std::abs(alpha) < 1e-12) continue;
    bool uniform = true;
    for (int j = 1; j < nb && uniform; ++j) {
      uniform = std::abs(hz.Ab(r, j) - alpha) <= 1e-12;
    }
    if (!uniform) continue;
    if (std::abs(hz.b(r) / alpha - (2.0 - nb)) <= 1e-9) return true;
  }
  return false;
}

Leaf makeLeaf(const HybridZonotope& hz, const Vec& assignment, int id) {
  Leaf leaf;
  leaf.id = id;
  leaf.binaryAssignment = assignment;
  leaf.set = hz.leafSet(assignment);
  leaf.boxBound = czTightBox(leaf.set);
  return leaf;
}

}  // namespace

std::vector<Leaf> enumerateLeaves(const HybridZonotope& hz,
                                  int enumerationCap) {
  const int nb = hz.numBinary();
  std::vector<Leaf> leaves;

  if (nb == 0) {
    ConstrainedZonotope cz(hz.Gc, hz.c, hz.Ac, hz.b);
    if (!czIsEmpty(cz)) {
      leaves.push_back(makeLeaf(hz, Vec(0), 1));
    }
    return leaves;
  }

  if (nb > enumerationCap) {
    if (!detectOneHot(hz)) {
      throw EnumerationBudgetExceeded(
          "enumerateLeaves: binary block exceeds the enumeration cap and has "
          "no one-hot structure");
    }
    int id = 1;
    for (int k = 0; k < nb; ++k) {
      Vec assignment = Vec::Constant(nb, -1.0);
      assignment(k) = 1.0;
      if (!czIsEmpty(hz.leafSet(assignment))) {
        leaves.push_back(makeLeaf(hz, assignment, id++));
      }
    }
    return leaves;
  }

  // DFS with LP-relaxation pruning, +1 branch first.
  long nodeBudget = 200000;
  std::function<void(Vec&)> dfs = [&](Vec& prefix) {
    if (--nodeBudget < 0) {
      throw EnumerationBudgetExceeded("enumerateLeaves: node budget exhausted");
    }
    if (!prefixFeasible(hz, prefix)) return;
    if (prefix.size() == nb) {
      leaves.push_back(makeLeaf(hz, prefix, static_cast<int>(leaves.size()) + 1));
      return;
    }
    Vec extended(prefix.size() + 1);
    extended.head(prefix.size()) = prefix;
    for (double branch : {1.0, -1.0}) {
      extended(prefix.size()) = branch;
      dfs(extended);
    }
  };
  Vec root(0);
  dfs(root);
  return leaves;
}

int findContainingLeaf(const Vec& x, const std::vector<Leaf>& leaves,
                       double tol) {
  if (leaves.empty()) {
    throw std::invalid_argument("findContainingLeaf: no leaves");
  }
  for (const Leaf& leaf : leaves) {
    if (!leaf.boxBound.contains(x, 1e-6)) continue;
    if (czContains(leaf.set, x, tol)) return leaf.id;
  }
  throw StateInObstacle("findContainingLeaf: state is not covered by any leaf");
}

}  // namespace hzmp
