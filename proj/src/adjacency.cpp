#include "hzmp/adjacency.hpp"

#include "hzmp/lp.hpp"
#include "hzmp/parallel.hpp"
#include "hzmp/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace hzmp {

namespace {

Mat stackedM(const HybridZonotope& hz) {
  Mat m(hz.dim() + hz.numConstraints(), hz.numContinuous());
  m << hz.Gc, hz.Ac;
  return m;
}

Mat stackedN(const HybridZonotope& hz) {
  Mat n(hz.dim() + hz.numConstraints(), hz.numBinary());
  n << hz.Gb, hz.Ab;
  return n;
}

// Coupled intersection system of Prop-style leaf tests, written over
// (xi, eta) with eta = xi + dXi so that both blocks carry plain unit boxes:
//   [-M  M] [xi; eta] = N dXi_b
//   [Ac  0] [xi; eta] = r_i
void buildIntersectionSystem(const HybridZonotope& hz, const Leaf& i,
                             const Leaf& j, Mat& a, Vec& rhs) {
  const int ng = hz.numContinuous();
  const int rowsMn = hz.dim() + hz.numConstraints();
  const Mat m = stackedM(hz);

  a = Mat::Zero(rowsMn + hz.numConstraints(), 2 * ng);
  a.topLeftCorner(rowsMn, ng) = -m;
  a.topRightCorner(rowsMn, ng) = m;
  a.bottomLeftCorner(hz.numConstraints(), ng) = hz.Ac;

  const Vec dXiB = j.binaryAssignment - i.binaryAssignment;
  rhs.resize(rowsMn + hz.numConstraints());
  rhs << stackedN(hz) * dXiB, hz.b - hz.Ab * i.binaryAssignment;
}

}  // namespace

bool consistencyCheck(const HybridZonotope& hz, const Vec& deltaXiB,
                      double tol) {
  if (deltaXiB.size() != hz.numBinary()) {
    throw std::invalid_argument("consistencyCheck: binary shift size mismatch");
  }
  const Vec y = stackedN(hz) * deltaXiB;
  auto [x, residual] = leastSquaresResidual(stackedM(hz), y);
  return residual <= tol * (1.0 + y.norm());
}

bool leafIntersectFeasible(const HybridZonotope& hz, const Leaf& i,
                           const Leaf& j, AdjacencyStats* stats) {
  if (i.id == j.id) {
    throw std::invalid_argument("leafIntersectFeasible: identical leaves");
  }
  const Vec dXiB = j.binaryAssignment - i.binaryAssignment;
  if (!consistencyCheck(hz, dXiB)) {
    if (stats) stats->shortcutHits.fetch_add(1);
    return false;
  }

  Mat a;
  Vec rhs;
  buildIntersectionSystem(hz, i, j, a, rhs);
  ReducedPolytope red = reduceFactorPolytope(a, rhs);
  if (red.provenEmpty) return false;
  if (red.freeDim() == 0) return true;
  if (stats) stats->lpCalls.fetch_add(1);
  LinearProgram lp;
  lp.objective = Vec::Zero(red.freeDim());
  lp.eqMatrix = red.A;
  lp.eqRhs = red.b;
  lp.lower = red.lo;
  lp.upper = red.hi;
  return solveLp(lp).status == LpStatus::Optimal;
}

ContactReport contactType(const HybridZonotope& hz, const Leaf& i,
                          const Leaf& j, double contactTol) {
  const int ng = hz.numContinuous();
  const int rowsMn = hz.dim() + hz.numConstraints();
  const int nc = hz.numConstraints();

  // Variables: xi (ng), eta (ng), delta (1), slacks s1..s4 (ng each) turning
  // the tightened boxes |xi| <= 1-delta, |eta| <= 1-delta into equalities.
  const int nv = 2 * ng + 1 + 4 * ng;
  const int deltaCol = 2 * ng;
  const int slackBase = 2 * ng + 1;
  const int rows = rowsMn + nc + 4 * ng;

  Mat a = Mat::Zero(rows, nv);
  Vec rhs = Vec::Zero(rows);

  const Mat m = stackedM(hz);
  a.block(0, 0, rowsMn, ng) = -m;
  a.block(0, ng, rowsMn, ng) = m;
  const Vec dXiB = j.binaryAssignment - i.binaryAssignment;
  rhs.head(rowsMn) = stackedN(hz) * dXiB;

  a.block(rowsMn, 0, nc, ng) = hz.Ac;
  rhs.segment(rowsMn, nc) = hz.b - hz.Ab * i.binaryAssignment;

  int row = rowsMn + nc;
  for (int pass = 0; pass < 4; ++pass) {
    const int var = (pass < 2) ? 0 : ng;       // xi block or eta block
    const double sign = (pass % 2 == 0) ? 1.0 : -1.0;
    for (int k = 0; k < ng; ++k, ++row) {
      a(row, var + k) = sign;
      a(row, deltaCol) = 1.0;
      a(row, slackBase + pass * ng + k) = 1.0;
      rhs(row) = 1.0;
    }
  }

  LinearProgram lp;
  lp.eqMatrix = std::move(a);
  lp.eqRhs = std::move(rhs);
  lp.objective = Vec::Zero(nv);
  lp.objective(deltaCol) = 1.0;
  lp.lower = Vec::Zero(nv);
  lp.lower.head(2 * ng).setConstant(-1.0);
  lp.upper = Vec::Constant(nv, 2.0);
  lp.upper.head(2 * ng).setOnes();
  lp.upper(deltaCol) = 1.0;

  LpOutcome out = solveLp(lp);
  if (out.status != LpStatus::Optimal) {
    throw Error("contactType: slack program infeasible for intersecting leaves");
  }

  ContactReport report;
  report.deltaStar = out.value;
  report.kind = out.value > contactTol ? ContactKind::Overlap : ContactKind::Tangent;
  report.xiC = out.point.head(ng);
  report.deltaXiC = out.point.segment(ng, ng) - report.xiC;
  report.hasWitness = true;
  return report;
}

LeafGraph adjacencyMatrix(const HybridZonotope& hz, std::vector<Leaf> leaves,
                          int threads) {
  LeafGraph graph;
  graph.leaves = std::move(leaves);
  const int k = static_cast<int>(graph.leaves.size());
  graph.adjacency = Eigen::MatrixXi::Zero(k, k);

  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) pairs.emplace_back(i, j);
  }
  std::vector<char> result(pairs.size(), 0);
  parallelFor(
      static_cast<int>(pairs.size()),
      [&](int p) {
        const auto [i, j] = pairs[static_cast<size_t>(p)];
        const Leaf& a = graph.leaves[static_cast<size_t>(i)];
        const Leaf& b = graph.leaves[static_cast<size_t>(j)];
        // Tight outer boxes give a sound disjointness precheck.
        if (!a.boxBound.intersects(b.boxBound, 1e-7)) return;
        result[static_cast<size_t>(p)] =
            leafIntersectFeasible(hz, a, b) ? 1 : 0;
      },
      threads);
  for (size_t p = 0; p < pairs.size(); ++p) {
    if (result[p]) {
      graph.adjacency(pairs[p].first, pairs[p].second) = 1;
      graph.adjacency(pairs[p].second, pairs[p].first) = 1;
    }
  }
  return graph;
}

ConstrainedZonotope sharedFace(const HybridZonotope& hz, const Leaf& i,
                               const Leaf& j) {
  ConstrainedZonotope face = czIntersectGeneralized(
      i.set, j.set, Mat::Identity(hz.dim(), hz.dim()));
  if (czIsEmpty(face)) {
    throw std::invalid_argument("sharedFace: leaves are not adjacent");
  }
  return face;
}

void computeSharedFaces(const HybridZonotope& hz, LeafGraph& graph,
                        int threads) {
  std::vector<std::pair<int, int>> pairs;
  const int k = static_cast<int>(graph.leaves.size());
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      if (graph.adjacency(i, j)) pairs.emplace_back(i, j);
    }
  }
  std::vector<ConstrainedZonotope> faces(pairs.size());
  parallelFor(
      static_cast<int>(pairs.size()),
      [&](int p) {
        const auto [i, j] = pairs[static_cast<size_t>(p)];
        faces[static_cast<size_t>(p)] =
            sharedFace(hz, graph.leaves[static_cast<size_t>(i)],
                       graph.leaves[static_cast<size_t>(j)]);
      },
      threads);
  for (size_t p = 0; p < pairs.size(); ++p) {
    graph.faces[{pairs[p].first + 1, pairs[p].second + 1}] = faces[p];
  }
}

std::vector<CandidatePath> enumeratePaths(const LeafGraph& graph, int iStart,
                                          int iGoal, int maxPaths,
                                          int maxLen) {
  const int k = static_cast<int>(graph.leaves.size());
  if (iStart < 1 || iStart > k || iGoal < 1 || iGoal > k) {
    throw std::invalid_argument("enumeratePaths: invalid leaf id");
  }
  if (maxLen < 0) maxLen = k;

  std::vector<CandidatePath> out;
  std::deque<std::vector<int>> queue;
  queue.push_back({iStart});
  while (!queue.empty() && static_cast<int>(out.size()) < maxPaths) {
    std::vector<int> path = std::move(queue.front());
    queue.pop_front();
    if (path.back() == iGoal) {
      out.push_back({path, false});
      continue;
    }
    if (static_cast<int>(path.size()) >= maxLen) continue;
    const int cur = path.back() - 1;
    for (int next = 0; next < k; ++next) {
      if (!graph.adjacency(cur, next)) continue;
      const int nextId = next + 1;
      if (std::find(path.begin(), path.end(), nextId) != path.end()) continue;
      std::vector<int> extended = path;
      extended.push_back(nextId);
      queue.push_back(std::move(extended));
    }
  }
  return out;
}

}  // namespace hzmp
