#ifndef HZMP_LP_HPP_
#define HZMP_LP_HPP_

#include "hzmp/types.hpp"

#include <utility>

namespace hzmp {

/**
 * @brief Dense linear program in equality + box form.
 *
 * maximize objective'x  subject to  eqMatrix x = eqRhs,  lower <= x <= upper.
 *
 * Lower bounds must be finite; upper bounds may be +infinity. Two-sided
 * inequality constraints are encoded by the caller through auxiliary
 * variables and nonnegative slacks.
 */
struct LinearProgram {
  Vec objective;
  Mat eqMatrix;
  Vec eqRhs;
  Vec lower;
  Vec upper;

  int numVars() const { return static_cast<int>(objective.size()); }
  int numConstraints() const { return static_cast<int>(eqRhs.size()); }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpOutcome {
  LpStatus status = LpStatus::Infeasible;
  Vec point;     // valid when Optimal
  double value = 0.0;
};

/**
 * @brief Two-phase dense simplex with Bland's rule as anti-cycling fallback.
 *
 * Iteration cap is 10 * (variables + constraints) of the standard-form
 * program; exceeding it raises SolverStall.
 */
LpOutcome solveLp(const LinearProgram& lp, double feasTol = kFeasTol);

/// Minimum-norm least squares: returns (argmin ||Mx - y||_2, residual norm).
std::pair<Vec, double> leastSquaresResidual(const Mat& M, const Vec& y);

/**
 * @brief Orthonormal basis of the null space {x : Ax = 0}.
 *
 * Rank is determined by column-pivoted QR with threshold
 * kRankTol * (largest pivot); dependent rows are dropped implicitly.
 * An A with zero rows yields the identity.
 */
Mat nullSpaceBasis(const Mat& A);

/**
 * @brief Completes a unit vector u to an orthonormal basis of R^n.
 *
 * Returns the n x (n-1) matrix C with [u | C] orthonormal. Requires
 * | ||u|| - 1 | <= 1e-9.
 */
Mat orthonormalCompletion(const Vec& u);

}  // namespace hzmp

#endif  // HZMP_LP_HPP_
