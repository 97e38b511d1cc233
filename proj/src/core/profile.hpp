#pragma once

#include <array>
#include <vector>

#include "core/types.hpp"

namespace tvq {

// One closed-form piece of the even posterior profile, valid for
// lo <= |theta| <= hi:  p(|theta|) = a + b*cos(theta) + c*sin(|theta|).
struct Piece {
  double lo = 0.0;
  double hi = 0.0;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  double eval(double t) const { return a + b * std::cos(t) + c * std::sin(t); }
};

// Optimal posterior profile of the unit at angle 0 on one circle of m_eff
// units: p(theta) is even, piecewise sinusoidal, supported on
// |theta| <= spacing/2 + s.
struct PosteriorProfile {
  double m_eff = 0.0;   // units on this circle (may be non-integral)
  double s = 0.0;       // overlap half-width
  Regime regime = Regime::TwoOverlap;
  double delta = 0.0;   // spacing = 2*pi/m_eff
  std::vector<Piece> pieces;       // sorted, contiguous in |theta|
  std::vector<double> breakpoints; // upper ends of the pieces

  double support_halfwidth() const { return delta / 2.0 + s; }
};

// Builds the profile for a circle of m_eff units with overlap half-width s.
// Regime fixes which closed form applies; s must lie in [0, delta/2] for
// TwoOverlap or [delta/2, delta] for ThreeOverlap (delta = 2*pi/m_eff).
// Throws std::domain_error otherwise.
PosteriorProfile build_profile(double m_eff, double s, Regime regime);

// Evaluates p(theta); theta is reduced to (-pi, pi] first.  At an interior
// breakpoint the piece to its left is used (the forms are continuous, so
// this only resolves which identical value is computed).  Outside the
// support the value is exactly 0.
double posterior_eval(const PosteriorProfile& profile, double theta);

// All units with strictly positive posterior at stimulus angle theta, as
// (unit index, posterior) sorted by index.  Requires m_eff to be integral
// (indices live in 0..m_eff-1); throws std::domain_error otherwise.
struct ActiveUnit {
  int y = 0;
  double p = 0.0;
};
std::vector<ActiveUnit> posterior_all(const PosteriorProfile& profile,
                                      double theta);

// Preferred vector of unit y on a circle of m_eff units with common length
// r: r * (cos(y*delta), sin(y*delta)).
std::array<double, 2> reference_vector(double r, double m_eff, int y);

}  // namespace tvq
