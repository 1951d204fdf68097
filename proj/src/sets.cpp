#include "hzmp/sets.hpp"

#include "hzmp/lp.hpp"
#include "hzmp/polytope.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace hzmp {

ConstrainedZonotope::ConstrainedZonotope(Mat g, Vec center, Mat a, Vec rhs)
    : G(std::move(g)), c(std::move(center)), A(std::move(a)), b(std::move(rhs)) {
  if (G.rows() != c.size() || A.rows() != b.size() || A.cols() != G.cols()) {
    throw std::invalid_argument("ConstrainedZonotope: inconsistent dimensions");
  }
  requireFinite(G, "ConstrainedZonotope G");
  requireFinite(A, "ConstrainedZonotope A");
  requireFinite(c, "ConstrainedZonotope c");
  requireFinite(b, "ConstrainedZonotope b");
}

ConstrainedZonotope ConstrainedZonotope::zonotope(Mat g, Vec center) {
  const auto cols = g.cols();
  return ConstrainedZonotope(std::move(g), std::move(center), Mat(0, cols),
                             Vec(0));
}

HybridZonotope::HybridZonotope(Mat gc, Mat gb, Vec center, Mat ac, Mat ab,
                               Vec rhs)
    : Gc(std::move(gc)),
      Gb(std::move(gb)),
      c(std::move(center)),
      Ac(std::move(ac)),
      Ab(std::move(ab)),
      b(std::move(rhs)) {
  if (Gc.rows() != c.size() || Gb.rows() != c.size() ||
      Ac.rows() != b.size() || Ab.rows() != b.size() ||
      Ac.cols() != Gc.cols() || Ab.cols() != Gb.cols()) {
    throw std::invalid_argument("HybridZonotope: inconsistent dimensions");
  }
}

ConstrainedZonotope HybridZonotope::leafSet(const Vec& xiB) const {
  if (xiB.size() != numBinary()) {
    throw std::invalid_argument("leafSet: binary assignment size mismatch");
  }
  return ConstrainedZonotope(Gc, c + Gb * xiB, Ac, b - Ab * xiB);
}

Ellipsoid::Ellipsoid(Vec c, Mat q) : center(std::move(c)), Q(std::move(q)) {
  if (Q.rows() != Q.cols() || Q.rows() != center.size()) {
    throw std::invalid_argument("Ellipsoid: inconsistent dimensions");
  }
  if ((Q - Q.transpose()).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("Ellipsoid: Q not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(Q, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() <= 0.0) {
    throw std::invalid_argument("Ellipsoid: Q not positive definite");
  }
}

Ellipsotope::Ellipsotope(Vec c, Mat g, Mat a, Vec rhs,
                         std::vector<std::vector<int>> blocks, double p)
    : center(std::move(c)),
      G(std::move(g)),
      A(std::move(a)),
      b(std::move(rhs)),
      indexSet(std::move(blocks)),
      normOrder(p) {
  if (p < 1.0) {
    throw std::invalid_argument("Ellipsotope: norm order must be >= 1");
  }
  std::vector<char> seen(static_cast<size_t>(G.cols()), 0);
  for (const auto& block : indexSet) {
    for (int idx : block) {
      if (idx < 0 || idx >= G.cols() || seen[static_cast<size_t>(idx)]) {
        throw std::invalid_argument("Ellipsotope: invalid index set");
      }
      seen[static_cast<size_t>(idx)] = 1;
    }
  }
  for (char s : seen) {
    if (!s) throw std::invalid_argument("Ellipsotope: index set must cover all generators");
  }
}

namespace {

// Feasibility of {A xi = b, lo <= xi <= hi} after contraction-based reduction.
bool factorSystemFeasible(const Mat& A, const Vec& b, double tol) {
  ReducedPolytope red = reduceFactorPolytope(A, b);
  if (red.provenEmpty) return false;
  if (red.freeDim() == 0) {
    // Fully pinned: consistency was already checked during reduction.
    return true;
  }
  LinearProgram lp;
  lp.objective = Vec::Zero(red.freeDim());
  lp.eqMatrix = red.A;
  lp.eqRhs = red.b;
  lp.lower = red.lo;
  lp.upper = red.hi;
  return solveLp(lp, tol).status == LpStatus::Optimal;
}

}  // namespace

bool czContains(const ConstrainedZonotope& z, const Vec& x, double tol) {
  if (x.size() != z.dim()) {
    throw std::invalid_argument("czContains: point dimension mismatch");
  }
  Mat a(z.dim() + z.numConstraints(), z.numGenerators());
  a << z.G, z.A;
  Vec rhs(z.dim() + z.numConstraints());
  rhs << x - z.c, z.b;
  return factorSystemFeasible(a, rhs, tol);
}

bool czIsEmpty(const ConstrainedZonotope& z, double tol) {
  return !factorSystemFeasible(z.A, z.b, tol);
}

ConstrainedZonotope czIntersectGeneralized(const ConstrainedZonotope& z,
                                           const ConstrainedZonotope& y,
                                           const Mat& r) {
  if (r.cols() != z.dim() || r.rows() != y.dim()) {
    throw std::invalid_argument("czIntersectGeneralized: R dimension mismatch");
  }
  const int ngz = z.numGenerators();
  const int ngy = y.numGenerators();
  const int ncz = z.numConstraints();
  const int ncy = y.numConstraints();
  const int m = y.dim();

  Mat g(z.dim(), ngz + ngy);
  g << z.G, Mat::Zero(z.dim(), ngy);

  Mat a = Mat::Zero(ncz + ncy + m, ngz + ngy);
  a.topLeftCorner(ncz, ngz) = z.A;
  a.block(ncz, ngz, ncy, ngy) = y.A;
  a.block(ncz + ncy, 0, m, ngz) = r * z.G;
  a.block(ncz + ncy, ngz, m, ngy) = -y.G;

  Vec b(ncz + ncy + m);
  b << z.b, y.b, y.c - r * z.c;

  return ConstrainedZonotope(std::move(g), z.c, std::move(a), std::move(b));
}

Box czBoxBound(const ConstrainedZonotope& z) {
  Vec radius = z.G.cwiseAbs().rowwise().sum();
  return Box(z.c - radius, z.c + radius);
}

bool ellipsoidContains(const Ellipsoid& e, const Vec& x) {
  return e.quadratic(x) <= 1.0 + 1e-12;
}

bool ellipsotopeContains(const Ellipsotope& e, const Vec& x, double tol) {
  // Supported fast path: single p=2 block, no constraints. The minimum-norm
  // preimage decides membership exactly.
  if (e.A.rows() != 0 || e.indexSet.size() != 1 || e.normOrder != 2.0) {
    throw std::invalid_argument(
        "ellipsotopeContains: only single-block p=2 unconstrained form");
  }
  auto [xi, residual] = leastSquaresResidual(e.G, x - e.center);
  if (residual > tol * (1.0 + (x - e.center).norm())) return false;
  return xi.norm() <= 1.0 + tol;
}

bool informedContains(const Vec& xs, const Vec& xg, double cBest,
                      const Vec& x) {
  const double straight = (xg - xs).norm();
  if (cBest < straight - 1e-12) {
    throw DegenerateInformedSet("informedContains: cBest below straight-line distance");
  }
  return (xs - x).norm() + (x - xg).norm() <= cBest + 1e-12;
}

}  // namespace hzmp
