#ifndef HZMP_TYPES_HPP_
#define HZMP_TYPES_HPP_

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace hzmp {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Default numeric tolerances. Every operation that consumes one of these
// also accepts it as a parameter, so callers can override per call.
inline constexpr double kFeasTol = 1e-8;         // LP feasibility
inline constexpr double kConsistencyTol = 1e-7;  // relative image-membership residual
inline constexpr double kContactTol = 1e-7;      // tangent-vs-overlap slack threshold
inline constexpr double kRankTol = 1e-10;        // pivot threshold relative to largest
inline constexpr double kSnapTol = 1e-9;         // coincident-vertex snapping

/// Base class for recoverable planner errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class SolverStall : public Error {
 public:
  explicit SolverStall(const std::string& what) : Error(what) {}
};

class DegenerateInformedSet : public Error {
 public:
  explicit DegenerateInformedSet(const std::string& what) : Error(what) {}
};

class EmptyFreeSpace : public Error {
 public:
  explicit EmptyFreeSpace(const std::string& what) : Error(what) {}
};

class DegenerateRegion : public Error {
 public:
  explicit DegenerateRegion(const std::string& what) : Error(what) {}
};

class EnumerationBudgetExceeded : public Error {
 public:
  explicit EnumerationBudgetExceeded(const std::string& what) : Error(what) {}
};

class StateInObstacle : public Error {
 public:
  explicit StateInObstacle(const std::string& what) : Error(what) {}
};

class UnreachableError : public Error {
 public:
  explicit UnreachableError(const std::string& what) : Error(what) {}
};

class MergeRequired : public Error {
 public:
  explicit MergeRequired(const std::string& what) : Error(what) {}
};

class NotPlottable : public Error {
 public:
  explicit NotPlottable(const std::string& what) : Error(what) {}
};

class ScenarioParseError : public Error {
 public:
  explicit ScenarioParseError(const std::string& what) : Error(what) {}
};

/// Axis-aligned box lower <= x <= upper.
struct Box {
  Vec lower;
  Vec upper;

  Box() = default;
  Box(Vec lo, Vec hi) : lower(std::move(lo)), upper(std::move(hi)) {
    if (lower.size() != upper.size()) {
      throw std::invalid_argument("Box: lower/upper dimension mismatch");
    }
    if (((upper - lower).array() < 0).any()) {
      throw std::invalid_argument("Box: lower > upper");
    }
  }

  int dim() const { return static_cast<int>(lower.size()); }

  Vec center() const { return 0.5 * (lower + upper); }

  bool contains(const Vec& x, double tol = 0.0) const {
    return (x.array() >= lower.array() - tol).all() &&
           (x.array() <= upper.array() + tol).all();
  }

  bool intersects(const Box& other, double tol = 0.0) const {
    return (lower.array() <= other.upper.array() + tol).all() &&
           (other.lower.array() <= upper.array() + tol).all();
  }
};

inline void requireFinite(const Mat& m, const char* what) {
  if (!m.allFinite()) {
    throw std::invalid_argument(std::string(what) + ": non-finite entries");
  }
}

inline Vec makeVec(std::initializer_list<double> v) {
  Vec out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

}  // namespace hzmp

#endif  // HZMP_TYPES_HPP_
