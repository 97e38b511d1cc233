#pragma once

#include <utility>

#include "core/types.hpp"

namespace tvq {

// A complete analytic solution of the encoding problem.
struct Solution {
  ProblemSpec spec{};
  Regime regime = Regime::TwoOverlap;
  double s = 0.0;             // overlap half-width
  double s_normalized = 0.0;  // s / (pi / m_eff)
  double r = 0.0;             // common preferred-vector length
  double d1 = 0.0;            // quantization part of the distortion bound
  double d2 = 0.0;            // variance part of the distortion bound
  double d_total = 0.0;       // closed-form d1 + d2
};

// Residual of the transcendental width equation in the closed form of the
// given regime.  The forms extend smoothly over the whole interval
// [0, delta] (delta = 2*pi/m_eff), so s is only required to lie there, not
// inside the regime's own sub-interval.  Requires n > 1 (the n = 1 limit is
// a closed form; see limit_n1).
double residual_s(const ProblemSpec& spec, double s, Regime regime);

// Root of the width equation.  The regime is dispatched by the sign of the
// two-overlap residual at delta/2: >= 0 keeps TwoOverlap (root in
// [0, delta/2]), < 0 switches to ThreeOverlap (root in [delta/2, delta]).
// Bisection to bracket width 1e-13, then secant polish; the returned root
// satisfies |residual| <= 1e-12 or SolverError is thrown.
std::pair<double, Regime> solve_s(const ProblemSpec& spec);

// Optimal preferred-vector length at overlap half-width s.
double optimal_r(const ProblemSpec& spec, double s, Regime regime);

// Closed-form total distortion bound at (s, optimal_r(s)).
double objective_closed_form(const ProblemSpec& spec, double s, Regime regime);

// Full solve: validates the spec, dispatches the regime, solves for s,
// evaluates r and the closed-form total, and splits d1/d2 with the folded
// single-cell quadrature.  n = 1 short-circuits to the hard-assignment
// closed forms (s = 0, d2 = 0).
Solution solve(const ProblemSpec& spec);

namespace family {

// Closed forms for one circle of mc units (mc need not be integral) and for
// the factorial torus at total count M.  The comparator evaluates these
// below the public floors, down to an analytic-continuation floor of 2.5
// units per circle.
double resid2_circle(double mc, double n, double s);
double resid3_circle(double mc, double n, double s);
double r2_circle(double mc, double n, double s);
double r3_circle(double mc, double n, double s);
double d2f_circle(double mc, double n, double s);
double d3f_circle(double mc, double n, double s);

double resid2_torus(double M, double n, double s);
double resid3_torus(double M, double n, double s);
double r2_torus(double M, double n, double s);
double r3_torus(double M, double n, double s);
double d2f_torus(double M, double n, double s);
double d3f_torus(double M, double n, double s);

struct Root {
  double s = 0.0;
  Regime regime = Regime::TwoOverlap;
  double r = 0.0;
  double d = 0.0;  // circle: one circle's distortion; torus: pair total
};

// Solve one circle (mc > 2.5) or the factorial pair (M > 5); n > 1.
Root solve_circle(double mc, double n);
Root solve_torus(double M, double n);

// Hard-assignment (n = 1) closed forms.
double n1_r_circle(double mc);
double n1_d_circle(double mc);
double n1_r_torus(double M);
double n1_d_torus(double M);

}  // namespace family

}  // namespace tvq
