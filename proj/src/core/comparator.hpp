#pragma once

#include <optional>
#include <vector>

#include "core/types.hpp"

namespace tvq {

// Joint-grid vs factorial-pair comparison on the 2-torus at equal total
// unit budget M.

struct Comparison {
  double d_joint = 0.0;
  double d_factorial = 0.0;
  double rel_gap = 0.0;  // (d_factorial - d_joint) / d_factorial
  Manifold winner = Manifold::TorusJoint;
};

// Requires M >= 8 and n >= 1.  Both codes are evaluated by analytic
// continuation of the per-circle closed forms (the joint grid at
// sqrt(M) < 4 units per axis is still well-defined down to a per-circle
// floor of 2.5, which is why M = 6 and 7 are excluded: sqrt(6) < 2.5).
Comparison compare(double M, double n);

// The M at which the two codes tie, if a factorial-winning window exists
// in [8, 64] at this n; bisection to width 1e-6.  Absent for n = 1 (the
// joint grid wins everywhere).
std::optional<double> winner_boundary(double n);

struct SweepRow {
  double M = 0.0;
  double n = 0.0;
  double d_joint = 0.0;
  double d_factorial = 0.0;
  double rel_gap = 0.0;
  Manifold winner = Manifold::TorusJoint;
};

// compare() over the given M values and a geometric n ladder from n_min to
// n_max (steps >= 2 points), M-major ordering.
std::vector<SweepRow> comparator_sweep(const std::vector<double>& Ms,
                                       double n_min, double n_max, int steps);

}  // namespace tvq
