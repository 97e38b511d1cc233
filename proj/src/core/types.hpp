#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace tvq {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

// Which manifold is being encoded, and with which code layout.
//   Circle         : a single ring of M units on S^1.
//   TorusJoint     : a 2-torus covered by one sqrt(M) x sqrt(M) joint grid.
//   TorusFactorial : a 2-torus covered by two independent rings of M/2 units.
enum class Manifold { Circle, TorusJoint, TorusFactorial };

// Overlap regime of the optimal posterior profile: either only adjacent
// units share probability mass (TwoOverlap) or next-nearest units join in
// (ThreeOverlap).
enum class Regime { TwoOverlap, ThreeOverlap };

struct ProblemSpec {
  Manifold manifold = Manifold::Circle;
  double M = 0.0;  // total number of units (continuous parameter)
  double n = 0.0;  // events read out per stimulus (continuous parameter)
};

inline const char* manifold_name(Manifold m) {
  switch (m) {
    case Manifold::Circle: return "circle";
    case Manifold::TorusJoint: return "torus-joint";
    case Manifold::TorusFactorial: return "torus-factorial";
  }
  return "?";
}

inline const char* regime_name(Regime r) {
  return r == Regime::TwoOverlap ? "two-overlap" : "three-overlap";
}

// Units per circle: M on the circle, sqrt(M) per axis of the joint grid,
// M/2 per ring of the factorial pair.
inline double effective_count(const ProblemSpec& spec) {
  switch (spec.manifold) {
    case Manifold::Circle: return spec.M;
    case Manifold::TorusJoint: return std::sqrt(spec.M);
    case Manifold::TorusFactorial: return spec.M / 2.0;
  }
  return 0.0;
}

// Angular spacing between adjacent preferred directions on one circle.
inline double spacing(double m_eff) { return kTwoPi / m_eff; }

// Validates M against the manifold-specific floor (effective count >= 4)
// and n >= 1.  Throws std::domain_error naming the violated bound.
inline void validate_spec(const ProblemSpec& spec) {
  switch (spec.manifold) {
    case Manifold::Circle:
      if (!(spec.M >= 4.0))
        throw std::domain_error("circle: M >= 4 required, got M=" +
                                std::to_string(spec.M));
      break;
    case Manifold::TorusJoint:
      if (!(spec.M >= 16.0))
        throw std::domain_error(
            "torus-joint: sqrt(M) >= 4 required (M >= 16), got M=" +
            std::to_string(spec.M));
      break;
    case Manifold::TorusFactorial:
      if (!(spec.M / 2.0 >= 4.0))
        throw std::domain_error(
            "torus-factorial: M/2 >= 4 required (M >= 8), got M=" +
            std::to_string(spec.M));
      break;
  }
  if (!(spec.n >= 1.0))
    throw std::domain_error("n >= 1 required, got n=" + std::to_string(spec.n));
  if (!std::isfinite(spec.M) || !std::isfinite(spec.n))
    throw std::domain_error("M and n must be finite");
}

// Thrown when a bracketing root solve cannot proceed; carries the bracket
// endpoint residuals for diagnosis.
struct SolverError : std::runtime_error {
  SolverError(const std::string& msg, double flo, double fhi)
      : std::runtime_error(msg), residual_lo(flo), residual_hi(fhi) {}
  double residual_lo;
  double residual_hi;
};

// Thrown when adaptive quadrature cannot reach the requested tolerance;
// carries the best estimate obtained so far.
struct QuadratureError : std::runtime_error {
  QuadratureError(const std::string& msg, double best, double err, int segs)
      : std::runtime_error(msg),
        best_estimate(best),
        error_estimate(err),
        segments(segs) {}
  double best_estimate;
  double error_estimate;
  int segments;
};

}  // namespace tvq
