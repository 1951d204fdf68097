#include "hzmp/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace hzmp {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kReducedCostTol = 1e-9;
constexpr double kFixedVarTol = 1e-12;

// Dense simplex tableau over standard form: all variables >= 0, rows Tz = rhs.
// Column layout: [shifted vars | upper-bound slacks | artificials | rhs].
class SimplexTableau {
 public:
  SimplexTableau(Mat tableau, std::vector<int> basis, int numReal, int artBegin)
      : t_(std::move(tableau)),
        basis_(std::move(basis)),
        numReal_(numReal),
        artBegin_(artBegin) {}

  int rows() const { return static_cast<int>(t_.rows()); }
  int rhsCol() const { return static_cast<int>(t_.cols()) - 1; }

  // Runs simplex on the given maximization objective (sized to all columns
  // except rhs). Returns false on iteration stall (cap exceeded).
  enum class RunResult { Optimal, Unbounded, Stalled };
  RunResult run(const Vec& objective, bool allowArtificialEntering,
                long iterationCap) {
    const int nCols = rhsCol();
    // Reduced-cost row: objective expressed in the nonbasic variables.
    Vec z = objective;
    double zVal = 0.0;
    for (int i = 0; i < rows(); ++i) {
      const double coeff = z(basis_[i]);
      if (coeff != 0.0) {
        z -= coeff * t_.row(i).head(nCols).transpose();
        zVal += coeff * t_(i, rhsCol());
      }
    }

    bool blandMode = false;
    long sincePivotGain = 0;
    const long stallLimit = std::max<long>(64, 2 * rows());
    for (long iter = 0; iter < iterationCap; ++iter) {
      const int enterLimit = allowArtificialEntering ? nCols : artBegin_;
      int enter = -1;
      if (blandMode) {
        for (int j = 0; j < enterLimit; ++j) {
          if (z(j) > kReducedCostTol) {
            enter = j;
            break;
          }
        }
      } else {
        double best = kReducedCostTol;
        for (int j = 0; j < enterLimit; ++j) {
          if (z(j) > best) {
            best = z(j);
            enter = j;
          }
        }
      }
      if (enter < 0) {
        objectiveValue_ = zVal;
        return RunResult::Optimal;
      }

      // Ratio test; ties broken by smallest basis column (Bland-compatible).
      int leave = -1;
      double bestRatio = std::numeric_limits<double>::infinity();
      for (int i = 0; i < rows(); ++i) {
        const double a = t_(i, enter);
        if (a > kPivotTol) {
          const double ratio = t_(i, rhsCol()) / a;
          if (ratio < bestRatio - 1e-12 ||
              (ratio < bestRatio + 1e-12 &&
               (leave < 0 || basis_[i] < basis_[leave]))) {
            bestRatio = ratio;
            leave = i;
          }
        }
      }
      if (leave < 0) {
        return RunResult::Unbounded;
      }

      const double gain = z(enter) * bestRatio;
      pivot(leave, enter, z, zVal);
      if (gain > 1e-12) {
        sincePivotGain = 0;
      } else if (++sincePivotGain > stallLimit) {
        blandMode = true;
      }
    }
    return RunResult::Stalled;
  }

  void pivot(int row, int col, Vec& z, double& zVal) {
    const int nCols = rhsCol();
    t_.row(row) /= t_(row, col);
    for (int i = 0; i < rows(); ++i) {
      if (i == row) continue;
      const double f = t_(i, col);
      if (std::abs(f) > 0.0) {
        t_.row(i) -= f * t_.row(row);
      }
    }
    const double zf = z(col);
    if (zf != 0.0) {
      z -= zf * t_.row(row).head(nCols).transpose();
      zVal += zf * t_(row, rhsCol());
    }
    basis_[row] = col;
  }

  // Drives basic artificials out of the basis after phase 1; deletes rows
  // that turn out redundant.
  void removeArtificials() {
    std::vector<int> keep;
    keep.reserve(rows());
    Vec dummyZ = Vec::Zero(rhsCol());
    double dummyVal = 0.0;
    for (int i = 0; i < rows(); ++i) {
      if (basis_[i] < artBegin_) {
        keep.push_back(i);
        continue;
      }
      int col = -1;
      for (int j = 0; j < artBegin_; ++j) {
        if (std::abs(t_(i, j)) > kPivotTol) {
          col = j;
          break;
        }
      }
      if (col >= 0) {
        pivot(i, col, dummyZ, dummyVal);
        keep.push_back(i);
      }
      // else: redundant constraint row, dropped below.
    }
    if (static_cast<int>(keep.size()) != rows()) {
      Mat nt(keep.size(), t_.cols());
      std::vector<int> nb(keep.size());
      for (size_t k = 0; k < keep.size(); ++k) {
        nt.row(static_cast<Eigen::Index>(k)) = t_.row(keep[k]);
        nb[k] = basis_[keep[k]];
      }
      t_ = std::move(nt);
      basis_ = std::move(nb);
    }
  }

  Vec extractSolution() const {
    Vec x = Vec::Zero(numReal_);
    for (int i = 0; i < rows(); ++i) {
      if (basis_[i] < numReal_) {
        x(basis_[i]) = t_(i, rhsCol());
      }
    }
    return x;
  }

  double objectiveValue() const { return objectiveValue_; }

 private:
  Mat t_;
  std::vector<int> basis_;
  int numReal_;   // shifted vars + slacks
  int artBegin_;  // first artificial column
  double objectiveValue_ = 0.0;
};

}  // namespace

LpOutcome solveLp(const LinearProgram& lp, double feasTol) {
  const int n = lp.numVars();
  const int m = lp.numConstraints();
  if (lp.eqMatrix.rows() != m || lp.eqMatrix.cols() != n ||
      lp.lower.size() != n || lp.upper.size() != n) {
    throw std::invalid_argument("solveLp: dimension mismatch");
  }
  if (!lp.objective.allFinite() || !lp.eqMatrix.allFinite() ||
      !lp.eqRhs.allFinite() || !lp.lower.allFinite()) {
    throw std::invalid_argument("solveLp: non-finite data");
  }
  for (int j = 0; j < n; ++j) {
    if (!(lp.lower(j) <= lp.upper(j))) {
      throw std::invalid_argument("solveLp: lower > upper");
    }
  }

  // Substitute out fixed variables, shift the rest to y = x - lower >= 0.
  std::vector<int> freeIdx;
  freeIdx.reserve(n);
  for (int j = 0; j < n; ++j) {
    if (lp.upper(j) - lp.lower(j) > kFixedVarTol) freeIdx.push_back(j);
  }
  const int nf = static_cast<int>(freeIdx.size());
  Vec rhs = lp.eqRhs - lp.eqMatrix * lp.lower;

  std::vector<int> slackFor;  // free-var indices with finite upper bound
  for (int k = 0; k < nf; ++k) {
    if (std::isfinite(lp.upper(freeIdx[k]))) slackFor.push_back(k);
  }
  const int mS = static_cast<int>(slackFor.size());
  const int mRows = m + mS;
  const int artBegin = nf + mS;
  const int nCols = nf + mS + m;  // artificials only on equality rows

  Mat t = Mat::Zero(mRows, nCols + 1);
  std::vector<int> basis(mRows, -1);

  for (int i = 0; i < m; ++i) {
    const double sign = rhs(i) < 0 ? -1.0 : 1.0;
    for (int k = 0; k < nf; ++k) {
      t(i, k) = sign * lp.eqMatrix(i, freeIdx[k]);
    }
    t(i, artBegin + i) = 1.0;
    t(i, nCols) = sign * rhs(i);
    basis[i] = artBegin + i;
  }
  for (int s = 0; s < mS; ++s) {
    const int row = m + s;
    const int k = slackFor[s];
    t(row, k) = 1.0;
    t(row, nf + s) = 1.0;
    t(row, nCols) = lp.upper(freeIdx[k]) - lp.lower(freeIdx[k]);
    basis[row] = nf + s;
  }

  const long iterationCap = 10L * (nCols + mRows);
  SimplexTableau tab(std::move(t), std::move(basis), nf + mS, artBegin);

  // Phase 1: maximize -(sum of artificials).
  Vec phase1 = Vec::Zero(nCols);
  phase1.segment(artBegin, m).setConstant(-1.0);
  auto r1 = tab.run(phase1, true, iterationCap);
  if (r1 == SimplexTableau::RunResult::Stalled) {
    throw SolverStall("solveLp: phase-1 iteration cap exceeded");
  }
  const double scale = 1.0 + (m > 0 ? rhs.cwiseAbs().maxCoeff() : 0.0);
  if (r1 == SimplexTableau::RunResult::Unbounded ||
      tab.objectiveValue() < -feasTol * scale) {
    return {LpStatus::Infeasible, Vec(), 0.0};
  }
  tab.removeArtificials();

  // Phase 2: the user's objective over the shifted variables.
  Vec phase2 = Vec::Zero(nCols);
  for (int k = 0; k < nf; ++k) phase2(k) = lp.objective(freeIdx[k]);
  auto r2 = tab.run(phase2, false, iterationCap);
  if (r2 == SimplexTableau::RunResult::Stalled) {
    throw SolverStall("solveLp: phase-2 iteration cap exceeded");
  }
  if (r2 == SimplexTableau::RunResult::Unbounded) {
    return {LpStatus::Unbounded, Vec(), 0.0};
  }

  Vec y = tab.extractSolution();
  Vec x = lp.lower;
  for (int k = 0; k < nf; ++k) {
    x(freeIdx[k]) += std::max(0.0, y(k));
    x(freeIdx[k]) = std::min(x(freeIdx[k]), lp.upper(freeIdx[k]));
  }
  return {LpStatus::Optimal, x, lp.objective.dot(x)};
}

std::pair<Vec, double> leastSquaresResidual(const Mat& M, const Vec& y) {
  if (M.rows() != y.size()) {
    throw std::invalid_argument("leastSquaresResidual: row count mismatch");
  }
  if (M.cols() == 0) {
    return {Vec(0), y.norm()};
  }
  Eigen::CompleteOrthogonalDecomposition<Mat> cod(M);
  Vec x = cod.solve(y);
  return {x, (M * x - y).norm()};
}

Mat nullSpaceBasis(const Mat& A) {
  const int n = static_cast<int>(A.cols());
  if (A.rows() == 0 || n == 0) {
    return Mat::Identity(n, n);
  }
  Eigen::ColPivHouseholderQR<Mat> qr(A.transpose());
  const Mat& R = qr.matrixR();
  const int k = static_cast<int>(std::min(A.rows(), A.cols()));
  double maxPivot = 0.0;
  for (int i = 0; i < k; ++i) maxPivot = std::max(maxPivot, std::abs(R(i, i)));
  int rank = 0;
  for (int i = 0; i < k; ++i) {
    if (std::abs(R(i, i)) > kRankTol * maxPivot) ++rank;
  }
  Mat q = qr.householderQ() * Mat::Identity(n, n);
  return q.rightCols(n - rank);
}

Mat orthonormalCompletion(const Vec& u) {
  const int n = static_cast<int>(u.size());
  if (std::abs(u.norm() - 1.0) > 1e-9) {
    throw std::invalid_argument("orthonormalCompletion: input not unit length");
  }
  if (n == 1) {
    return Mat(1, 0);
  }
  // Householder reflection whose first column is u (up to sign absorbed here).
  const double sign = u(0) >= 0 ? 1.0 : -1.0;
  Vec v = u;
  v(0) += sign;
  Mat h = Mat::Identity(n, n) - (2.0 / v.squaredNorm()) * (v * v.transpose());
  return -sign * h.rightCols(n - 1);
}

}  // namespace hzmp
