#pragma once

#include "core/types.hpp"

namespace tvq {

// Thresholded-cosine (hinge) approximation of the two-overlap posterior on
// a circle of M units: each unit fires Q_y = max(0, cos(theta - y*delta) - a)
// with the shared threshold a = cos(pi/M) - sin(pi/M)*sin(s), and the
// normalized hinge outputs approximate the exact posterior.

// Shared threshold a(s, M).
double activation_threshold(double s, double M);

// Raw hinge output of unit y at stimulus angle theta.  Requires integral
// M >= 4 and s in (0, pi/M].
double activation_eval(int y, double theta, double s, double M);

// Normalized hinge output of unit 0: Q_0 / sum_y Q_y.  The denominator is
// strictly positive for every theta (a < cos(pi/M)).
double approx_posterior(double theta, double s, double M);

struct ApproxError {
  double sup_error = 0.0;    // sup |p - p_approx| over the transition
  double argmax = 0.0;       // where the sup is attained
  double exact_cubic = 0.0;  // cubic coefficient of p at the crossover
  double approx_cubic = 0.0; // cubic coefficient of p_approx at the crossover
};

// Sup-norm error over the full transition [pi/M - s, pi/M + s] (dense scan
// plus golden-section refinement) and the two cubic coefficients at the
// crossover theta = pi/M.
ApproxError approx_error(double s, double M);

// Log-log regression slope of the error against the distance from the
// crossover, over 25 log-spaced offsets in [s/100, s/2] (max of the two
// sides at each offset).  ~3 when the approximation is cubic-accurate.
double fitted_transition_exponent(double s, double M);

}  // namespace tvq
