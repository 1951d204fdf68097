#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hzmp/construct.hpp"
#include "support.hpp"

#include <random>
#include <set>

using namespace hzmp;
using namespace hzmp::testsupport;

namespace {

ConvexRegion rect(double x0, double y0, double x1, double y1) {
  ConvexRegion r;
  r.vertices = {makeVec({x0, y0}), makeVec({x1, y0}), makeVec({x1, y1}),
                makeVec({x0, y1})};
  return r;
}

Box workspace10() { return Box(makeVec({0.0, 0.0}), makeVec({10.0, 10.0})); }

// Wall across the workspace with one gap at y in [6, 7].
std::vector<ConvexRegion> wallWithGap() {
  return {rect(4.7, 0.0, 5.3, 6.0), rect(4.7, 7.0, 5.3, 10.0)};
}

Vec regionCentroid(const ConvexRegion& r) {
  Vec c = Vec::Zero(r.dim());
  for (const Vec& v : r.vertices) c += v;
  return c / static_cast<double>(r.vertices.size());
}

Vec randomHullPoint(const ConvexRegion& r, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  double total = 0.0;
  Vec x = Vec::Zero(r.dim());
  for (const Vec& v : r.vertices) {
    const double w = dist(rng);
    x += w * v;
    total += w;
  }
  return x / total;
}

std::set<std::vector<int>> assignmentKeys(const std::vector<Leaf>& leaves) {
  std::set<std::vector<int>> keys;
  for (const Leaf& leaf : leaves) {
    std::vector<int> key;
    for (Eigen::Index i = 0; i < leaf.binaryAssignment.size(); ++i) {
      key.push_back(leaf.binaryAssignment(i) > 0 ? 1 : -1);
    }
    keys.insert(key);
  }
  return keys;
}

// Brute force over all binary assignments; the reference for enumeration.
std::set<std::vector<int>> bruteForceLeaves(const HybridZonotope& hz) {
  std::set<std::vector<int>> keys;
  const int nb = hz.numBinary();
  for (int mask = 0; mask < (1 << nb); ++mask) {
    Vec assignment(nb);
    std::vector<int> key;
    for (int i = 0; i < nb; ++i) {
      const int bit = (mask >> i) & 1 ? 1 : -1;
      assignment(i) = bit;
      key.push_back(bit);
    }
    if (!czIsEmpty(hz.leafSet(assignment))) keys.insert(key);
  }
  return keys;
}

}  // namespace

TEST_CASE("decomposeFreeSpace2D empty obstacle list") {
  const auto regions = decomposeFreeSpace2D(workspace10(), {});
  REQUIRE(regions.size() == 1);
  CHECK(regionArea2d(regions[0]) == doctest::Approx(100.0));
  CHECK(regionContains(regions[0], makeVec({5.0, 5.0})));
  CHECK(regionContains(regions[0], makeVec({0.0, 0.0})));
}

TEST_CASE("decomposeFreeSpace2D centered square obstacle") {
  const Box ws(makeVec({0.0, 0.0}), makeVec({4.0, 4.0}));
  const auto regions = decomposeFreeSpace2D(ws, {rect(1.5, 1.5, 2.5, 2.5)});
  CHECK(regions.size() == 4);
  double area = 0.0;
  for (const auto& r : regions) area += regionArea2d(r);
  CHECK(area == doctest::Approx(16.0 - 1.0).epsilon(1e-9));
}

TEST_CASE("decomposeFreeSpace2D wall with gap coverage") {
  const auto obstacles = wallWithGap();
  const auto regions = decomposeFreeSpace2D(workspace10(), obstacles);

  // The gap cell spans the wall slab.
  const Vec gapProbe = makeVec({5.0, 6.5});
  int gapIdx = -1;
  for (size_t i = 0; i < regions.size(); ++i) {
    if (regionContainsInterior2d(regions[i], gapProbe)) {
      gapIdx = static_cast<int>(i);
    }
  }
  REQUIRE(gapIdx >= 0);
  double gx0 = 1e9, gx1 = -1e9;
  for (const Vec& v : regions[static_cast<size_t>(gapIdx)].vertices) {
    gx0 = std::min(gx0, v(0));
    gx1 = std::max(gx1, v(0));
  }
  CHECK(gx0 == doctest::Approx(4.7));
  CHECK(gx1 == doctest::Approx(5.3));
  // Cells exist on both sides of the gap slab.
  bool leftNeighbor = false, rightNeighbor = false;
  for (const auto& r : regions) {
    if (regionContainsInterior2d(r, makeVec({4.0, 6.5}))) leftNeighbor = true;
    if (regionContainsInterior2d(r, makeVec({6.0, 6.5}))) rightNeighbor = true;
  }
  CHECK(leftNeighbor);
  CHECK(rightNeighbor);

  // Coverage: every free point lies in exactly one interior or on a shared
  // boundary; obstacle-interior points lie in no cell.
  std::mt19937_64 rng(2024);
  int freeChecked = 0, obstacleChecked = 0;
  for (int k = 0; k < 5000; ++k) {
    const Vec p = randomVec(rng, 2, 0.0, 10.0);
    bool inObstacleInterior = false;
    bool nearObstacleBoundary = false;
    for (const auto& obs : obstacles) {
      if (regionContainsInterior2d(obs, p, 1e-6)) inObstacleInterior = true;
      if (regionContains(obs, p, 1e-6) && !regionContainsInterior2d(obs, p, 1e-6)) {
        nearObstacleBoundary = true;
      }
    }
    if (nearObstacleBoundary) continue;  // ambiguous band
    int interiorCount = 0, closureCount = 0;
    for (const auto& r : regions) {
      if (regionContainsInterior2d(r, p)) ++interiorCount;
      if (regionContains(r, p, 1e-9)) ++closureCount;
    }
    if (inObstacleInterior) {
      CHECK(closureCount == 0);
      ++obstacleChecked;
    } else {
      const bool exactlyOneInterior = interiorCount == 1;
      const bool onSharedBoundary = interiorCount == 0 && closureCount >= 1;
      CHECK((exactlyOneInterior || onSharedBoundary));
      ++freeChecked;
    }
  }
  CHECK(freeChecked > 4000);
  CHECK(obstacleChecked > 50);
}

TEST_CASE("decomposeFreeSpace2D full blockage") {
  const Box ws(makeVec({0.0, 0.0}), makeVec({2.0, 2.0}));
  CHECK_THROWS_AS(decomposeFreeSpace2D(ws, {rect(-1.0, -1.0, 3.0, 3.0)}),
                  EmptyFreeSpace);
}

TEST_CASE("buildHzFromVrep single triangle") {
  ConvexRegion tri;
  tri.vertices = {makeVec({0.0, 0.0}), makeVec({2.0, 0.0}), makeVec({0.0, 2.0})};
  const auto hz = buildHzFromVrep(buildVrep({tri}));
  const auto leaves = enumerateLeaves(hz);
  REQUIRE(leaves.size() == 1);
  CHECK(czContains(leaves[0].set, regionCentroid(tri)));
  CHECK_FALSE(czContains(leaves[0].set, makeVec({2.0, 2.0})));
  CHECK_FALSE(czContains(leaves[0].set, makeVec({-0.1, 0.5})));
}

TEST_CASE("buildHzFromVrep two squares sharing an edge") {
  const std::vector<ConvexRegion> regions = {rect(0, 0, 1, 1), rect(1, 0, 2, 1)};
  const auto hz = buildHzFromVrep(buildVrep(regions));
  const auto leaves = enumerateLeaves(hz);
  REQUIRE(leaves.size() == 2);
  CHECK(leaves[0].boxBound.lower.isApprox(makeVec({0.0, 0.0}), 1e-6));
  CHECK(leaves[0].boxBound.upper.isApprox(makeVec({1.0, 1.0}), 1e-6));
  CHECK(leaves[1].boxBound.lower.isApprox(makeVec({1.0, 0.0}), 1e-6));
  CHECK(leaves[1].boxBound.upper.isApprox(makeVec({2.0, 1.0}), 1e-6));
}

TEST_CASE("buildHzFromVrep rejects degenerate regions") {
  ConvexRegion segment;
  segment.vertices = {makeVec({0.0, 0.0}), makeVec({1.0, 0.0})};
  CHECK_THROWS_AS(buildVrep({segment}), DegenerateRegion);
}

TEST_CASE("buildHzFromVrep corridor topology recovers 4 leaves") {
  // File order deliberately scrambled relative to geometry: the chain in id
  // space is 1-4-3-2.
  const std::vector<ConvexRegion> regions = {
      rect(0, 0, 1, 1),   // id 1
      rect(3, 0, 4, 1),   // id 2
      rect(2, 0, 3, 1),   // id 3
      rect(1, 0, 2, 1)};  // id 4
  const auto hz = buildHzFromVrep(buildVrep(regions));
  const auto leaves = enumerateLeaves(hz);
  REQUIRE(leaves.size() == 4);
  std::mt19937_64 rng(5);
  for (size_t k = 0; k < regions.size(); ++k) {
    // Leaf ids follow region order; membership matches the hull both ways.
    const Leaf& leaf = leaves[k];
    CHECK(leaf.id == static_cast<int>(k) + 1);
    for (int s = 0; s < 50; ++s) {
      CHECK(czContains(leaf.set, randomHullPoint(regions[k], rng), 1e-6));
      CHECK(regionContains(regions[k], randomMember(leaf.set, rng), 1e-6));
    }
  }
}

TEST_CASE("enumerateLeaves matches brute force on one-hot structures") {
  std::vector<ConvexRegion> regions;
  for (int k = 0; k < 5; ++k) {
    regions.push_back(rect(2.0 * k, 0.0, 2.0 * k + 1.0, 1.0));
  }
  const auto hz = buildHzFromVrep(buildVrep(regions));
  REQUIRE(hz.numBinary() == 5);
  const auto leaves = enumerateLeaves(hz);
  CHECK(leaves.size() == 5);
  CHECK(assignmentKeys(leaves) == bruteForceLeaves(hz));
}

TEST_CASE("enumerateLeaves empty for inconsistent constraints") {
  // 1 continuous factor, 1 binary, constraint 0*xi_c + 0*xi_b = 1.
  HybridZonotope hz(Mat::Identity(1, 1), Mat::Zero(1, 1), Vec::Zero(1),
                    Mat::Zero(1, 1), Mat::Zero(1, 1), makeVec({1.0}));
  CHECK(enumerateLeaves(hz).empty());
}

TEST_CASE("enumerateLeaves completeness on random small hybrid zonotopes") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 10; ++trial) {
    const int nb = 3 + static_cast<int>(rng() % 4);
    const int ng = 3;
    const Mat gc = randomMat(rng, 2, ng);
    const Mat gb = randomMat(rng, 2, nb, -0.4, 0.4);
    const Mat ac = randomMat(rng, 2, ng);
    const Mat ab = randomMat(rng, 2, nb, -0.5, 0.5);
    const Vec b = randomVec(rng, 2);
    const HybridZonotope hz(gc, gb, Vec::Zero(2), ac, ab, b);
    CHECK(assignmentKeys(enumerateLeaves(hz)) == bruteForceLeaves(hz));
  }
}

TEST_CASE("enumerateLeaves cap without structure") {
  std::mt19937_64 rng(1);
  const int nb = 25;
  HybridZonotope hz(Mat::Identity(2, 2), randomMat(rng, 2, nb), Vec::Zero(2),
                    Mat::Zero(0, 2), Mat::Zero(0, nb), Vec(0));
  CHECK_THROWS_AS(enumerateLeaves(hz, 20), EnumerationBudgetExceeded);
}

TEST_CASE("findContainingLeaf") {
  const std::vector<ConvexRegion> regions = {
      rect(0, 0, 1, 1), rect(3, 0, 4, 1), rect(2, 0, 3, 1), rect(1, 0, 2, 1)};
  const auto hz = buildHzFromVrep(buildVrep(regions));
  const auto leaves = enumerateLeaves(hz);

  CHECK(findContainingLeaf(regionCentroid(regions[2]), leaves) == 3);
  // Shared boundary between leaves 1 and 4 resolves to the smaller id.
  CHECK(findContainingLeaf(makeVec({1.0, 0.5}), leaves) == 1);
  CHECK_THROWS_AS(findContainingLeaf(makeVec({8.0, 8.0}), leaves),
                  StateInObstacle);
}

TEST_CASE("partition property on the wall scene") {
  const auto obstacles = wallWithGap();
  const auto regions = decomposeFreeSpace2D(workspace10(), obstacles);
  const auto hz = buildHzFromVrep(buildVrep(regions));
  const auto leaves = enumerateLeaves(hz);
  CHECK(leaves.size() == regions.size());

  std::mt19937_64 rng(303);
  for (int k = 0; k < 10000; ++k) {
    const Vec p = randomVec(rng, 2, 0.0, 10.0);
    bool nearAnyBoundary = false;
    bool inObstacle = false;
    for (const auto& obs : obstacles) {
      if (regionContainsInterior2d(obs, p, 1e-6)) inObstacle = true;
      if (regionContains(obs, p, 1e-6) &&
          !regionContainsInterior2d(obs, p, 1e-6)) {
        nearAnyBoundary = true;
      }
    }
    if (nearAnyBoundary) continue;
    int covering = 0;
    for (const Leaf& leaf : leaves) {
      if (leaf.boxBound.contains(p, 1e-6) && czContains(leaf.set, p, 1e-7)) {
        ++covering;
      }
    }
    if (inObstacle) {
      CHECK(covering == 0);
    } else {
      CHECK(covering >= 1);
    }
  }
}
