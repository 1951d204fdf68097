#include "hzmp/sampling.hpp"

#include "hzmp/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hzmp {

namespace {

constexpr double kDegenerateSlack = 1e-9;

// Chebyshev-style slack program over a reduced polytope: maximize s with
// lo + s <= xi <= hi - s on the free coordinates (equalities kept exact).
// Returns the optimal point and slack.
std::pair<Vec, double> maxSlackPoint(const ReducedPolytope& red) {
  const int nf = red.freeDim();
  const int nc = static_cast<int>(red.b.size());
  const int sCol = nf;
  const int nv = nf + 1 + 2 * nf;

  Mat a = Mat::Zero(nc + 2 * nf, nv);
  Vec rhs(nc + 2 * nf);
  a.topLeftCorner(nc, nf) = red.A;
  rhs.head(nc) = red.b;
  for (int k = 0; k < nf; ++k) {
    // xi_k - s - u_k = lo_k  and  xi_k + s + v_k = hi_k
    a(nc + k, k) = 1.0;
    a(nc + k, sCol) = -1.0;
    a(nc + k, nf + 1 + k) = -1.0;
    rhs(nc + k) = red.lo(k);
    a(nc + nf + k, k) = 1.0;
    a(nc + nf + k, sCol) = 1.0;
    a(nc + nf + k, nf + 1 + nf + k) = 1.0;
    rhs(nc + nf + k) = red.hi(k);
  }

  LinearProgram lp;
  lp.eqMatrix = std::move(a);
  lp.eqRhs = std::move(rhs);
  lp.objective = Vec::Zero(nv);
  lp.objective(sCol) = 1.0;
  lp.lower = Vec::Zero(nv);
  lp.lower.head(nf) = red.lo;
  lp.upper = Vec::Constant(nv, std::numeric_limits<double>::infinity());
  lp.upper.head(nf) = red.hi;
  lp.upper(sCol) = 1.0;

  LpOutcome out = solveLp(lp);
  if (out.status != LpStatus::Optimal) {
    throw std::invalid_argument("maxSlackPoint: empty face polytope");
  }
  return {out.point.head(nf), out.value};
}

// Exact per-coordinate ranges via support LPs; pins coordinates the interval
// contraction missed. Returns true when new pins were added.
bool pinBySupport(const ConstrainedZonotope& face, ReducedPolytope& red) {
  LinearProgram lp;
  lp.eqMatrix = red.A;
  lp.eqRhs = red.b;
  lp.lower = red.lo;
  lp.upper = red.hi;

  Mat extraRows(0, face.numGenerators());
  Vec extraRhs(0);
  for (int k = 0; k < red.freeDim(); ++k) {
    lp.objective = Vec::Zero(red.freeDim());
    lp.objective(k) = 1.0;
    const double hiK = solveLp(lp).value;
    lp.objective(k) = -1.0;
    const double loK = -solveLp(lp).value;
    if (hiK - loK <= kSnapTol) {
      extraRows.conservativeResize(extraRows.rows() + 1, Eigen::NoChange);
      extraRows.row(extraRows.rows() - 1).setZero();
      extraRows(extraRows.rows() - 1, red.freeIdx[k]) = 1.0;
      extraRhs.conservativeResize(extraRhs.size() + 1);
      extraRhs(extraRhs.size() - 1) = 0.5 * (loK + hiK);
    }
  }
  if (extraRows.rows() == 0) return false;

  Mat a(face.A.rows() + extraRows.rows(), face.numGenerators());
  a << face.A, extraRows;
  Vec b(face.b.size() + extraRhs.size());
  b << face.b, extraRhs;
  red = reduceFactorPolytope(a, b);
  return true;
}

}  // namespace

FacePolytope buildFacePolytope(const ConstrainedZonotope& face) {
  FacePolytope fp;
  fp.face = face;
  fp.reduced = reduceFactorPolytope(face.A, face.b);
  if (fp.reduced.provenEmpty) {
    throw std::invalid_argument("buildFacePolytope: empty face");
  }

  for (int attempt = 0; attempt < 3; ++attempt) {
    if (fp.reduced.freeDim() == 0) {
      fp.tangent = Mat(0, 0);
      fp.anchor = Vec(0);
      fp.degenerate = true;
      return fp;
    }
    auto [anchor, slack] = maxSlackPoint(fp.reduced);
    if (slack > kDegenerateSlack || attempt == 2) {
      fp.anchor = anchor;
      fp.degenerate = slack <= kDegenerateSlack;
      break;
    }
    // Zero slack: some coordinate is implicitly constant. Find and pin it,
    // then rebuild over the smaller free set.
    if (!pinBySupport(face, fp.reduced)) {
      fp.anchor = anchor;
      fp.degenerate = true;
      break;
    }
    if (fp.reduced.provenEmpty) {
      throw std::invalid_argument("buildFacePolytope: empty face");
    }
  }
  fp.tangent = nullSpaceBasis(fp.reduced.A);
  if (fp.tangent.cols() == 0) fp.degenerate = true;
  return fp;
}

Vec interiorPoint(const ConstrainedZonotope& face, bool* degenerate) {
  ReducedPolytope plain;
  plain.fullDim = face.numGenerators();
  plain.isPinned.assign(static_cast<size_t>(face.numGenerators()), 0);
  plain.pinnedValue = Vec::Zero(face.numGenerators());
  for (int j = 0; j < face.numGenerators(); ++j) plain.freeIdx.push_back(j);
  plain.A = face.A;
  plain.b = face.b;
  plain.lo = Vec::Constant(face.numGenerators(), -1.0);
  plain.hi = Vec::Constant(face.numGenerators(), 1.0);

  auto [point, slack] = maxSlackPoint(plain);
  if (degenerate) *degenerate = slack <= kDegenerateSlack;
  return point;
}

WalkState hitAndRunStep(const FacePolytope& fp, WalkState st) {
  const int nt = static_cast<int>(fp.tangent.cols());
  if (nt == 0) {
    st.degenerate = true;
    return st;
  }
  Vec coeff(nt);
  for (int k = 0; k < nt; ++k) coeff(k) = st.rng.normal();
  Vec dir = fp.tangent * coeff;
  const double norm = dir.norm();
  if (norm < 1e-14) {
    st.degenerate = true;
    return st;
  }
  dir /= norm;

  // Feasible chord {lambda : lo <= x + lambda dir <= hi} in closed form.
  double lambdaMin = -std::numeric_limits<double>::infinity();
  double lambdaMax = std::numeric_limits<double>::infinity();
  for (int k = 0; k < dir.size(); ++k) {
    const double d = dir(k);
    if (std::abs(d) < 1e-14) continue;
    const double toLo = (fp.reduced.lo(k) - st.current(k)) / d;
    const double toHi = (fp.reduced.hi(k) - st.current(k)) / d;
    lambdaMin = std::max(lambdaMin, std::min(toLo, toHi));
    lambdaMax = std::min(lambdaMax, std::max(toLo, toHi));
  }
  if (!std::isfinite(lambdaMin) || !std::isfinite(lambdaMax) ||
      lambdaMax < lambdaMin) {
    ++st.stepCount;
    return st;
  }
  const double lambda = lambdaMin + st.rng.uniform() * (lambdaMax - lambdaMin);
  st.current += lambda * dir;
  st.current = st.current.cwiseMax(fp.reduced.lo).cwiseMin(fp.reduced.hi);
  ++st.stepCount;
  return st;
}

WalkState billiardWalkStep(const FacePolytope& fp, WalkState st,
                           const SamplerKind& kind) {
  const int nt = static_cast<int>(fp.tangent.cols());
  if (nt == 0) {
    st.degenerate = true;
    return st;
  }
  Vec coeff(nt);
  for (int k = 0; k < nt; ++k) coeff(k) = st.rng.normal();
  Vec dir = fp.tangent * coeff;
  if (dir.norm() < 1e-14) {
    st.degenerate = true;
    return st;
  }
  dir /= dir.norm();

  double tau = kind.billiardTrajectoryLength;
  if (tau <= 0.0) tau = (fp.reduced.hi - fp.reduced.lo).norm();
  double remaining = -tau * std::log(st.rng.uniformOpen());

  Vec x = st.current;
  const Vec original = st.current;
  int reflections = 0;
  while (true) {
    double tHit = std::numeric_limits<double>::infinity();
    int hitCoord = -1;
    for (int k = 0; k < dir.size(); ++k) {
      const double d = dir(k);
      if (std::abs(d) < 1e-14) continue;
      const double t = d > 0 ? (fp.reduced.hi(k) - x(k)) / d
                             : (fp.reduced.lo(k) - x(k)) / d;
      if (t < tHit) {
        tHit = t;
        hitCoord = k;
      }
    }
    tHit = std::max(tHit, 0.0);
    if (remaining <= tHit || hitCoord < 0) {
      x += remaining * dir;
      break;
    }
    x += tHit * dir;
    remaining -= tHit;
    if (++reflections > kind.billiardMaxReflections) {
      ++st.stepCount;
      st.current = original;  // rejected step
      return st;
    }
    // Specular reflection at the box facet, then back onto the tangent
    // space so the equality constraints stay satisfied.
    dir(hitCoord) = -dir(hitCoord);
    dir = fp.tangent * (fp.tangent.transpose() * dir);
    const double norm = dir.norm();
    if (norm < 1e-12) {
      ++st.stepCount;
      st.current = original;
      return st;
    }
    dir /= norm;
  }
  st.current = x.cwiseMax(fp.reduced.lo).cwiseMin(fp.reduced.hi);
  ++st.stepCount;
  return st;
}

std::vector<Vec> sampleFace(const FacePolytope& fp, int nS,
                            const SamplerKind& kind, std::uint64_t seed) {
  if (nS < 1) {
    throw std::invalid_argument("sampleFace: nS must be >= 1");
  }
  std::vector<Vec> out;
  out.reserve(static_cast<size_t>(nS));

  const int nt = static_cast<int>(fp.tangent.cols());
  if (nt == 0) {
    const Vec point = fp.toWorkspace(fp.anchor);
    out.assign(static_cast<size_t>(nS), point);
    return out;
  }

  WalkState st{fp.anchor, Rng(seed), 0, false};
  const int burnIn = 10 * nt;
  const int thinning = std::max(1, nt);
  auto step = [&](WalkState s) {
    return kind.tag == SamplerKind::Tag::HitAndRun
               ? hitAndRunStep(fp, std::move(s))
               : billiardWalkStep(fp, std::move(s), kind);
  };
  for (int i = 0; i < burnIn; ++i) st = step(std::move(st));
  while (static_cast<int>(out.size()) < nS) {
    for (int i = 0; i < thinning; ++i) st = step(std::move(st));
    out.push_back(fp.toWorkspace(st.current));
  }
  return out;
}

std::vector<Vec> sampleFace(const ConstrainedZonotope& face, int nS,
                            const SamplerKind& kind, std::uint64_t seed) {
  return sampleFace(buildFacePolytope(face), nS, kind, seed);
}

}  // namespace hzmp
