#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hzmp/sets.hpp"
#include "support.hpp"

#include <random>

using namespace hzmp;
using namespace hzmp::testsupport;

namespace {

ConstrainedZonotope unitSquare() {
  return ConstrainedZonotope::zonotope(Mat::Identity(2, 2), Vec::Zero(2));
}

ConstrainedZonotope shiftedSquare(double dx, double dy) {
  return ConstrainedZonotope::zonotope(Mat::Identity(2, 2), makeVec({dx, dy}));
}

}  // namespace

TEST_CASE("czContains on the unit square") {
  const auto z = unitSquare();
  CHECK(czContains(z, makeVec({0.0, 0.0})));
  CHECK_FALSE(czContains(z, makeVec({2.0, 0.0})));
  CHECK_THROWS_AS(czContains(z, makeVec({0.0, 0.0, 0.0})),
                  std::invalid_argument);
}

TEST_CASE("czContains constructed member point") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Mat g = randomMat(rng, 2, 2);
    const Vec c = randomVec(rng, 2);
    Mat a(1, 2);
    a << 1.0, 1.0;
    const ConstrainedZonotope z(g, c, a, makeVec({0.0}));
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    const double t = dist(rng);
    const Vec xi = makeVec({t, -t});  // satisfies the constraint
    CHECK(czContains(z, z.map(xi)));
  }
}

TEST_CASE("czIsEmpty") {
  Mat a(1, 1);
  a << 1.0;
  const ConstrainedZonotope unreachable(Mat::Identity(1, 1), Vec::Zero(1), a,
                                        makeVec({2.0}));
  CHECK(czIsEmpty(unreachable));

  CHECK_FALSE(czIsEmpty(unitSquare()));

  Mat a2(1, 2);
  a2 << 1.0, 1.0;
  const ConstrainedZonotope witness(Mat::Identity(2, 2), Vec::Zero(2), a2,
                                    makeVec({1.5}));
  CHECK_FALSE(czIsEmpty(witness));  // xi = (1, 0.5)
}

TEST_CASE("czIntersectGeneralized idempotent on identical sets") {
  const auto z = unitSquare();
  const auto result = czIntersectGeneralized(z, z, Mat::Identity(2, 2));
  std::mt19937_64 rng(21);
  for (int k = 0; k < 200; ++k) {
    const Vec x = randomVec(rng, 2, -1.4, 1.4);
    CHECK(czContains(result, x, 1e-7) == czContains(z, x, 1e-7));
  }
}

TEST_CASE("czIntersectGeneralized disjoint squares") {
  const auto result = czIntersectGeneralized(unitSquare(), shiftedSquare(3.0, 0.0),
                                             Mat::Identity(2, 2));
  CHECK(czIsEmpty(result));
}

TEST_CASE("czIntersectGeneralized halfspace oracle") {
  // [-1,1]^2 intersected with [0,2]x[-1,1] must behave as [0,1]x[-1,1].
  const auto result = czIntersectGeneralized(unitSquare(), shiftedSquare(1.0, 0.0),
                                             Mat::Identity(2, 2));
  std::mt19937_64 rng(31);
  int checked = 0;
  for (int k = 0; k < 1000; ++k) {
    const Vec x = randomVec(rng, 2, -1.5, 1.5);
    // Skip the membership boundary band; LP tolerance would flip coins there.
    if (std::abs(x(0)) < 1e-6 || std::abs(x(0) - 1.0) < 1e-6 ||
        std::abs(std::abs(x(1)) - 1.0) < 1e-6) {
      continue;
    }
    const bool expected =
        x(0) >= 0.0 && x(0) <= 1.0 && x(1) >= -1.0 && x(1) <= 1.0;
    CHECK(czContains(result, x) == expected);
    ++checked;
  }
  CHECK(checked > 900);
}

TEST_CASE("czIntersectGeneralized soundness both directions") {
  std::mt19937_64 rng(41);
  const Mat r = Mat::Identity(2, 2);
  for (int trial = 0; trial < 5; ++trial) {
    const Mat gz = randomMat(rng, 2, 3);
    const Mat gy = randomMat(rng, 2, 3);
    const Vec cz = randomVec(rng, 2, -0.3, 0.3);
    const Vec cy = randomVec(rng, 2, -0.3, 0.3);
    const auto z = ConstrainedZonotope::zonotope(gz, cz);
    const auto y = ConstrainedZonotope::zonotope(gy, cy);
    const auto inter = czIntersectGeneralized(z, y, r);
    if (czIsEmpty(inter)) continue;

    for (int k = 0; k < 100; ++k) {
      const Vec member = randomMember(inter, rng);
      CHECK(czContains(z, member, 1e-6));
      CHECK(czContains(y, r * member, 1e-6));
    }
    for (int k = 0; k < 100; ++k) {
      const Vec candidate = randomMember(z, rng);
      if (czContains(y, r * candidate, 1e-9)) {
        CHECK(czContains(inter, candidate, 1e-6));
      }
    }
  }
}

TEST_CASE("czBoxBound interval arithmetic") {
  const Box b1 = czBoxBound(unitSquare());
  CHECK(b1.lower.isApprox(makeVec({-1.0, -1.0})));
  CHECK(b1.upper.isApprox(makeVec({1.0, 1.0})));

  Mat g(2, 2);
  g << 1.0, 1.0, 0.0, 1.0;
  const Box b2 = czBoxBound(ConstrainedZonotope::zonotope(g, Vec::Zero(2)));
  CHECK(b2.lower.isApprox(makeVec({-2.0, -1.0})));
  CHECK(b2.upper.isApprox(makeVec({2.0, 1.0})));
}

TEST_CASE("czBoxBound conservative over sampled members") {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 5; ++trial) {
    const Mat g = randomMat(rng, 2, 4);
    Mat a(1, 4);
    a << 1.0, -1.0, 0.5, 0.25;
    const ConstrainedZonotope z(g, randomVec(rng, 2), a, makeVec({0.25}));
    if (czIsEmpty(z)) continue;
    const Box box = czBoxBound(z);
    for (int k = 0; k < 200; ++k) {
      CHECK(box.contains(randomMember(z, rng), 1e-9));
    }
  }
}

TEST_CASE("ellipsoidContains") {
  const Ellipsoid ball(Vec::Zero(3), Mat::Identity(3, 3));
  CHECK(ellipsoidContains(ball, Vec::Zero(3)));
  CHECK(ellipsoidContains(ball, makeVec({1.0, 0.0, 0.0})));  // boundary

  Mat q = Mat::Zero(2, 2);
  q(0, 0) = 0.25;
  q(1, 1) = 1.0;
  const Ellipsoid flat(Vec::Zero(2), q);
  CHECK_FALSE(ellipsoidContains(flat, makeVec({2.01, 0.0})));
  CHECK(ellipsoidContains(flat, makeVec({1.99, 0.0})));
}

TEST_CASE("informedContains basics") {
  const Vec xs = makeVec({0.0, 0.0});
  const Vec xg = makeVec({2.0, 0.0});
  CHECK(informedContains(xs, xg, 2.5, xs));
  // Degenerate ellipse: exactly the segment.
  CHECK(informedContains(xs, xg, 2.0, makeVec({1.0, 0.0})));
  CHECK_FALSE(informedContains(xs, xg, 2.0, makeVec({1.0, 0.1})));
  CHECK_THROWS_AS(informedContains(xs, xg, 1.0, xs), DegenerateInformedSet);
}

TEST_CASE("informedContains agrees with the shape-matrix ellipsoid") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 10; ++trial) {
    const Vec xs = randomVec(rng, 2, -2.0, 2.0);
    const Vec xg = randomVec(rng, 2, -2.0, 2.0);
    const double d = (xg - xs).norm();
    if (d < 0.2) continue;
    std::uniform_real_distribution<double> extra(0.3, 2.0);
    const double cBest = d + extra(rng);

    const Vec dhat = (xg - xs) / d;
    const double a = 0.5 * cBest;
    const double b = std::sqrt(a * a - 0.25 * d * d);
    const Mat proj = dhat * dhat.transpose();
    const Mat q = proj / (a * a) + (Mat::Identity(2, 2) - proj) / (b * b);
    const Ellipsoid ellipsoid(0.5 * (xs + xg), 0.5 * (q + q.transpose()));

    int agreed = 0, tested = 0;
    for (int k = 0; k < 1000; ++k) {
      const Vec x = 0.5 * (xs + xg) + randomVec(rng, 2, -1.5 * a, 1.5 * a);
      const double quad = ellipsoid.quadratic(x);
      if (std::abs(quad - 1.0) <= 1e-6) continue;  // boundary band
      ++tested;
      if (informedContains(xs, xg, cBest, x) == (quad <= 1.0)) ++agreed;
    }
    CHECK(agreed == tested);
  }
}

TEST_CASE("membership invariant under a zero generator column") {
  std::mt19937_64 rng(71);
  const Mat g = randomMat(rng, 2, 3);
  Mat a(1, 3);
  a << 0.5, 1.0, -1.0;
  const ConstrainedZonotope z(g, Vec::Zero(2), a, makeVec({0.3}));

  Mat gExt(2, 4);
  gExt << g, Vec::Zero(2);
  Mat aExt(1, 4);
  aExt << a, 0.0;
  const ConstrainedZonotope zExt(gExt, Vec::Zero(2), aExt, makeVec({0.3}));

  for (int k = 0; k < 300; ++k) {
    const Vec x = randomVec(rng, 2, -2.0, 2.0);
    CHECK(czContains(z, x) == czContains(zExt, x));
  }
}
