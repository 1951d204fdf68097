#ifndef HZMP_SETS_HPP_
#define HZMP_SETS_HPP_

#include "hzmp/types.hpp"

#include <vector>

namespace hzmp {

/**
 * @brief Constrained zonotope {G xi + c : A xi = b, ||xi||_inf <= 1}.
 *
 * Immutable value type; all operations below return new sets.
 */
struct ConstrainedZonotope {
  Mat G;  // n x n_g
  Vec c;  // n
  Mat A;  // n_c x n_g
  Vec b;  // n_c

  ConstrainedZonotope() = default;
  ConstrainedZonotope(Mat g, Vec center, Mat a, Vec rhs);

  /// Unconstrained zonotope (empty constraint block).
  static ConstrainedZonotope zonotope(Mat g, Vec center);

  int dim() const { return static_cast<int>(c.size()); }
  int numGenerators() const { return static_cast<int>(G.cols()); }
  int numConstraints() const { return static_cast<int>(b.size()); }

  Vec map(const Vec& xi) const { return G * xi + c; }
};

/**
 * @brief Hybrid zonotope <Gc, Gb, c, Ac, Ab, b>: continuous factors in the
 * unit box, binary factors in {-1, +1}, joint equality constraints.
 */
struct HybridZonotope {
  Mat Gc;  // n x n_g
  Mat Gb;  // n x n_b
  Vec c;   // n
  Mat Ac;  // n_c x n_g
  Mat Ab;  // n_c x n_b
  Vec b;   // n_c

  HybridZonotope() = default;
  HybridZonotope(Mat gc, Mat gb, Vec center, Mat ac, Mat ab, Vec rhs);

  int dim() const { return static_cast<int>(c.size()); }
  int numContinuous() const { return static_cast<int>(Gc.cols()); }
  int numBinary() const { return static_cast<int>(Gb.cols()); }
  int numConstraints() const { return static_cast<int>(b.size()); }

  /// Constrained zonotope obtained by fixing the binary factors.
  ConstrainedZonotope leafSet(const Vec& xiB) const;
};

/// Ellipsoid {x : (x-c)' Q (x-c) <= 1} with symmetric positive definite Q.
struct Ellipsoid {
  Vec center;
  Mat Q;

  Ellipsoid() = default;
  Ellipsoid(Vec c, Mat q);

  double quadratic(const Vec& x) const {
    const Vec d = x - center;
    return d.dot(Q * d);
  }
};

/**
 * @brief Ellipsotope: {c + G xi : ||xi_J||_p <= 1 for J in indexSet, A xi = b}.
 *
 * Only the p = 2 single-block form is exercised by the planner; the type
 * keeps the general shape for construction and membership queries.
 */
struct Ellipsotope {
  Vec center;
  Mat G;
  Mat A;
  Vec b;
  std::vector<std::vector<int>> indexSet;
  double normOrder = 2.0;

  Ellipsotope() = default;
  Ellipsotope(Vec c, Mat g, Mat a, Vec rhs,
              std::vector<std::vector<int>> blocks, double p);
};

// --- membership / emptiness -------------------------------------------------

/// x in Z, decided by LP feasibility of {G xi = x - c, A xi = b, box}.
bool czContains(const ConstrainedZonotope& z, const Vec& x,
                double tol = kFeasTol);

/// True when {A xi = b, ||xi||_inf <= 1} is infeasible.
bool czIsEmpty(const ConstrainedZonotope& z, double tol = kFeasTol);

/**
 * @brief Generalized intersection {z in Z : R z in Y} as a constrained
 * zonotope, via generator/constraint stacking.
 */
ConstrainedZonotope czIntersectGeneralized(const ConstrainedZonotope& z,
                                           const ConstrainedZonotope& y,
                                           const Mat& r);

/// Conservative axis-aligned bound c_k +- sum_j |G_kj| (constraints ignored).
Box czBoxBound(const ConstrainedZonotope& z);

bool ellipsoidContains(const Ellipsoid& e, const Vec& x);

/// Ellipsotope membership via the minimum-norm factor (p = 2 blocks only).
bool ellipsotopeContains(const Ellipsotope& e, const Vec& x,
                         double tol = 1e-9);

/**
 * @brief Membership in {x : ||xs - x|| + ||x - xg|| <= cBest}.
 *
 * Throws DegenerateInformedSet when cBest < ||xg - xs||.
 */
bool informedContains(const Vec& xs, const Vec& xg, double cBest, const Vec& x);

}  // namespace hzmp

#endif  // HZMP_SETS_HPP_
