#include "core/comparator.hpp"

#include <cmath>
#include <string>

#include "core/solver.hpp"

namespace tvq {

namespace {

double d_joint_at(double M, double n) {
  const double mc = std::sqrt(M);
  if (n == 1.0) return 2.0 * family::n1_d_circle(mc);
  return 2.0 * family::solve_circle(mc, n).d;
}

double d_factorial_at(double M, double n) {
  if (n == 1.0) return family::n1_d_torus(M);
  return family::solve_torus(M, n).d;
}

}  // namespace

Comparison compare(double M, double n) {
  if (!(M >= 8.0))
    throw std::domain_error(
        "compare: M >= 8 required (below 8 the joint grid falls under the "
        "per-circle continuation floor), got M=" + std::to_string(M));
  if (!(n >= 1.0))
    throw std::domain_error("compare: n >= 1 required, got n=" +
                            std::to_string(n));
  Comparison out;
  out.d_joint = d_joint_at(M, n);
  out.d_factorial = d_factorial_at(M, n);
  out.rel_gap = (out.d_factorial - out.d_joint) / out.d_factorial;
  out.winner = out.d_factorial < out.d_joint ? Manifold::TorusFactorial
                                             : Manifold::TorusJoint;
  return out;
}

std::optional<double> winner_boundary(double n) {
  if (!(n >= 1.0))
    throw std::domain_error("winner_boundary: n >= 1 required");
  const auto gap = [n](double M) {
    return d_factorial_at(M, n) - d_joint_at(M, n);
  };
  double a = 8.0, b = 64.0;
  double fa = gap(a);
  const double fb = gap(b);
  // The factorial code can only win on the small-M side; a tie inside the
  // bracket needs a sign change.
  if (fa * fb > 0.0) return std::nullopt;
  while (b - a > 1e-6) {
    const double m = 0.5 * (a + b);
    const double fm = gap(m);
    if (fa * fm <= 0.0) {
      b = m;
    } else {
      a = m;
      fa = fm;
    }
  }
  return 0.5 * (a + b);
}

std::vector<SweepRow> comparator_sweep(const std::vector<double>& Ms,
                                       double n_min, double n_max, int steps) {
  if (steps < 2)
    throw std::domain_error("comparator_sweep: steps >= 2 required");
  if (!(n_min >= 1.0 && n_max >= n_min))
    throw std::domain_error("comparator_sweep: need 1 <= n_min <= n_max");
  std::vector<SweepRow> rows;
  rows.reserve(Ms.size() * static_cast<size_t>(steps));
  const double ratio = n_max / n_min;
  for (double M : Ms) {
    for (int j = 0; j < steps; ++j) {
      const double n =
          n_min * std::pow(ratio, static_cast<double>(j) / (steps - 1));
      const Comparison c = compare(M, n);
      rows.push_back(SweepRow{M, n, c.d_joint, c.d_factorial, c.rel_gap,
                              c.winner});
    }
  }
  return rows;
}

}  // namespace tvq
