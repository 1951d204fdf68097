#ifndef HZMP_SAMPLING_HPP_
#define HZMP_SAMPLING_HPP_

#include "hzmp/polytope.hpp"
#include "hzmp/sets.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace hzmp {

/**
 * @brief Deterministic random source.
 *
 * mt19937_64 has a standard-pinned sequence; doubles are produced by explicit
 * bit manipulation and the Gaussian by Box-Muller, so streams are bitwise
 * reproducible across platforms for a given seed.
 */
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform on (0, 1].
  double uniformOpen() { return 1.0 - uniform(); }

  double normal() {
    if (hasSpare_) {
      hasSpare_ = false;
      return spare_;
    }
    const double u1 = uniformOpen();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(theta);
    hasSpare_ = true;
    return r * std::cos(theta);
  }

  /// Stable seed mixing (splitmix64 round per component).
  static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    std::uint64_t z = a + 0x9e3779b97f4a7c15ULL + b;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool hasSpare_ = false;
};

/// Sampler selection with Billiard Walk knobs.
struct SamplerKind {
  enum class Tag { HitAndRun, BilliardWalk };
  Tag tag = Tag::HitAndRun;
  double billiardTrajectoryLength = 0.0;  // <= 0: use the face box diameter
  int billiardMaxReflections = 50;

  static SamplerKind hitAndRun() { return {}; }
  static SamplerKind billiard(double trajectoryLength = 0.0,
                              int maxReflections = 50) {
    return {Tag::BilliardWalk, trajectoryLength, maxReflections};
  }
};

/**
 * @brief Walk domain of a face: the factor polytope of a constrained
 * zonotope with implied equalities removed.
 *
 * `tangent` spans the null space of the reduced constraint matrix and
 * `anchor` is a relative-interior point (both in reduced coordinates).
 * Faces whose factor polytope is a single point are flagged degenerate.
 */
struct FacePolytope {
  ConstrainedZonotope face;
  ReducedPolytope reduced;
  Mat tangent;
  Vec anchor;           // reduced coordinates
  bool degenerate = false;

  /// Workspace image of a reduced factor point.
  Vec toWorkspace(const Vec& reducedPoint) const {
    return face.G * reduced.lift(reducedPoint) + face.c;
  }
};

FacePolytope buildFacePolytope(const ConstrainedZonotope& face);

/// Walk iterate in reduced factor coordinates.
struct WalkState {
  Vec current;
  Rng rng;
  long stepCount = 0;
  bool degenerate = false;
};

/**
 * @brief Max-slack (Chebyshev-style) factor point of {A xi = b, box}.
 *
 * Maximizes s subject to -1+s <= xi <= 1-s; when the optimum is s = 0 the
 * face has an empty factor-box interior and `degenerate` is set.
 */
Vec interiorPoint(const ConstrainedZonotope& face, bool* degenerate = nullptr);

WalkState hitAndRunStep(const FacePolytope& fp, WalkState st);

WalkState billiardWalkStep(const FacePolytope& fp, WalkState st,
                           const SamplerKind& kind);

/**
 * @brief nS workspace points asymptotically uniform on the face's factor
 * polytope (burn-in 10*dim, thinning dim); deterministic for a fixed seed.
 */
std::vector<Vec> sampleFace(const ConstrainedZonotope& face, int nS,
                            const SamplerKind& kind, std::uint64_t seed);

/// Same, reusing a prebuilt polytope.
std::vector<Vec> sampleFace(const FacePolytope& fp, int nS,
                            const SamplerKind& kind, std::uint64_t seed);

}  // namespace hzmp

#endif  // HZMP_SAMPLING_HPP_
