#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hzmp/lp.hpp"
#include "support.hpp"

#include <functional>
#include <random>

using namespace hzmp;
using namespace hzmp::testsupport;

namespace {

LinearProgram boxLp(const Vec& objective, const Mat& a, const Vec& b) {
  LinearProgram lp;
  lp.objective = objective;
  lp.eqMatrix = a;
  lp.eqRhs = b;
  lp.lower = Vec::Constant(objective.size(), -1.0);
  lp.upper = Vec::Constant(objective.size(), 1.0);
  return lp;
}

}  // namespace

TEST_CASE("solveLp box bound") {
  LinearProgram lp = boxLp(makeVec({1.0}), Mat(0, 1), Vec(0));
  const LpOutcome out = solveLp(lp);
  REQUIRE(out.status == LpStatus::Optimal);
  CHECK(out.point(0) == doctest::Approx(1.0));
  CHECK(out.value == doctest::Approx(1.0));
}

TEST_CASE("solveLp contradictory constraint") {
  Mat a(1, 1);
  a << 1.0;
  LinearProgram lp = boxLp(makeVec({0.0}), a, makeVec({2.0}));
  CHECK(solveLp(lp).status == LpStatus::Infeasible);
}

TEST_CASE("solveLp segment optimum matches vertex enumeration") {
  Mat a(1, 2);
  a << 1.0, 1.0;
  LinearProgram lp = boxLp(makeVec({1.0, 1.0}), a, makeVec({0.5}));
  const LpOutcome out = solveLp(lp);
  REQUIRE(out.status == LpStatus::Optimal);
  CHECK(out.value == doctest::Approx(0.5));

  bool feasible = false;
  const double oracle = vertexEnumerationMax(lp, &feasible);
  REQUIRE(feasible);
  CHECK(out.value == doctest::Approx(oracle).epsilon(1e-8));
}

TEST_CASE("solveLp dimension mismatch") {
  LinearProgram lp;
  lp.objective = makeVec({1.0, 0.0});
  lp.eqMatrix = Mat(1, 1);
  lp.eqMatrix << 1.0;
  lp.eqRhs = makeVec({0.0});
  lp.lower = makeVec({-1.0, -1.0});
  lp.upper = makeVec({1.0, 1.0});
  CHECK_THROWS_AS(solveLp(lp), std::invalid_argument);
}

TEST_CASE("solveLp duality spot check on random bounded LPs") {
  std::mt19937_64 rng(20240601);
  int compared = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 2);
    const int m = static_cast<int>(rng() % n);
    Mat a = randomMat(rng, m, n);
    // Anchor the rhs at a random interior point so the LP is feasible.
    const Vec x0 = randomVec(rng, n, -0.8, 0.8);
    const Vec b = a * x0;
    LinearProgram lp = boxLp(randomVec(rng, n), a, b);

    bool feasible = false;
    const double oracle = vertexEnumerationMax(lp, &feasible);
    if (!feasible) continue;
    const LpOutcome out = solveLp(lp);
    REQUIRE(out.status == LpStatus::Optimal);
    CHECK(out.value == doctest::Approx(oracle).epsilon(1e-8));
    // Reported point must itself be feasible.
    if (m > 0) {
      CHECK((lp.eqMatrix * out.point - lp.eqRhs).cwiseAbs().maxCoeff() < 1e-7);
    }
    CHECK((out.point.array() >= -1.0 - 1e-8).all());
    CHECK((out.point.array() <= 1.0 + 1e-8).all());
    ++compared;
  }
  CHECK(compared > 150);
}

TEST_CASE("leastSquaresResidual identity") {
  auto [x, residual] = leastSquaresResidual(Mat::Identity(2, 2), makeVec({1.0, 2.0}));
  CHECK(x(0) == doctest::Approx(1.0));
  CHECK(x(1) == doctest::Approx(2.0));
  CHECK(residual == doctest::Approx(0.0));
}

TEST_CASE("leastSquaresResidual orthogonal target") {
  Mat m(2, 1);
  m << 1.0, 0.0;
  auto [x, residual] = leastSquaresResidual(m, makeVec({0.0, 1.0}));
  CHECK(residual == doctest::Approx(1.0));
}

TEST_CASE("leastSquaresResidual point in image") {
  std::mt19937_64 rng(7);
  const Mat m = randomMat(rng, 4, 2);
  const Vec y = m * makeVec({0.3, -0.7});
  auto [x, residual] = leastSquaresResidual(m, y);
  CHECK(residual <= 1e-10);
}

TEST_CASE("leastSquaresResidual in-image property") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    const int rows = 2 + static_cast<int>(rng() % 5);
    const int cols = 1 + static_cast<int>(rng() % rows);
    const Mat m = randomMat(rng, rows, cols);
    const Vec z = randomVec(rng, cols);
    auto [x, residual] = leastSquaresResidual(m, m * z);
    CHECK(residual <= 1e-10);
  }
}

TEST_CASE("nullSpaceBasis single row") {
  Mat a(1, 2);
  a << 1.0, 0.0;
  const Mat basis = nullSpaceBasis(a);
  REQUIRE(basis.cols() == 1);
  CHECK(std::abs(basis(0, 0)) == doctest::Approx(0.0));
  CHECK(std::abs(basis(1, 0)) == doctest::Approx(1.0));
}

TEST_CASE("nullSpaceBasis empty constraint matrix") {
  const Mat basis = nullSpaceBasis(Mat(0, 3));
  CHECK(basis.isApprox(Mat::Identity(3, 3)));
}

TEST_CASE("nullSpaceBasis orthogonality and rank") {
  std::mt19937_64 rng(12345);
  for (int trial = 0; trial < 30; ++trial) {
    const Mat a = randomMat(rng, 2, 5);
    const Mat basis = nullSpaceBasis(a);
    CHECK((a * basis).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK((basis.transpose() * basis - Mat::Identity(basis.cols(), basis.cols()))
              .cwiseAbs()
              .maxCoeff() <= 1e-10);
    // rank(A) + basis columns = variable count.
    Eigen::ColPivHouseholderQR<Mat> qr(a);
    qr.setThreshold(1e-10);
    CHECK(qr.rank() + basis.cols() == a.cols());
  }
}

TEST_CASE("nullSpaceBasis drops dependent rows") {
  Mat a(2, 3);
  a << 1.0, 2.0, 3.0, 2.0, 4.0, 6.0;  // second row dependent
  const Mat basis = nullSpaceBasis(a);
  CHECK(basis.cols() == 2);
  CHECK((a * basis).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("orthonormalCompletion 2d") {
  const Mat c = orthonormalCompletion(makeVec({1.0, 0.0}));
  REQUIRE(c.cols() == 1);
  CHECK(std::abs(c(1, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(c(0, 0)) == doctest::Approx(0.0));
}

TEST_CASE("orthonormalCompletion 3d axis") {
  const Mat c = orthonormalCompletion(makeVec({0.0, 0.0, 1.0}));
  REQUIRE(c.cols() == 2);
  // Completion spans the e1/e2 plane: third row is zero.
  CHECK(c.row(2).cwiseAbs().maxCoeff() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("orthonormalCompletion random unit gram matrix") {
  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 20; ++trial) {
    Vec u = randomVec(rng, 4);
    u.normalize();
    const Mat c = orthonormalCompletion(u);
    Mat full(4, 4);
    full.col(0) = u;
    full.rightCols(3) = c;
    CHECK((full.transpose() * full - Mat::Identity(4, 4)).cwiseAbs().maxCoeff() <=
          1e-10);
  }
}

TEST_CASE("orthonormalCompletion rejects non-unit input") {
  CHECK_THROWS_AS(orthonormalCompletion(makeVec({1.0, 1.0})),
                  std::invalid_argument);
}
