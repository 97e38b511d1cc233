#pragma once

#include "core/types.hpp"

namespace tvq {

// Closed-form limits and series of the solution in the three regimes of
// interest: many units (large M), a single event (n = 1), and many events
// (large n), plus the boundary curves between solution regimes.

struct SeriesPoint {
  double s = 0.0;
  double r = 0.0;
  double d = 0.0;
};

// Large-M series of (s, r, d) at fixed n (n > 1).
SeriesPoint expand_large_M(const ProblemSpec& spec);

// Exact n = 1 (hard assignment) solution: s = 0, closed-form r and d.
SeriesPoint limit_n1(const ProblemSpec& spec);

// Large-n (cube-root) series of (s, r, d) at fixed M.
SeriesPoint expand_large_n(const ProblemSpec& spec);

// n -> infinity limit of n * d at fixed M.
double limit_n_times_d(const ProblemSpec& spec);

// Flat-manifold limit of the unit cell (spacing normalized to 1):
// s = (n-1)/(2n), d = (2n-1)/(6n^2).
struct LinearLimit {
  double s = 0.0;
  double d = 0.0;
};
LinearLimit linear_manifold_limit(double n);

// The n above which the optimal profile leaves the two-overlap regime, for
// a circle of m_eff units (Circle/TorusJoint) or the factorial torus with
// m_eff units per ring.  n_asymptote is the leading large-m_eff behaviour:
// 3*m_eff^2/pi^2 for the circle family, 6*m_eff^2/pi^2 (i.e. (3/2)M^2/pi^2
// at total count M = 2*m_eff) for the factorial torus.
struct BoundaryN {
  double n_exact = 0.0;
  double n_asymptote = 0.0;
};
BoundaryN boundary_two_three(double m_eff, Manifold manifold);

// Large-n crossing point of the joint/factorial distortions: the M solving
// tan^2(pi/sqrt(M)) = 2*sec^2(2*pi/M) - 1.
double asymptotic_crossing_M();

}  // namespace tvq
