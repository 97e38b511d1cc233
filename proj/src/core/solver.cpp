#include "core/solver.hpp"

#include <cmath>
#include <string>

#include "core/oracle.hpp"

namespace tvq {

namespace family {

double resid2_circle(double mc, double n, double s) {
  const double x = kPi / mc;
  return std::sin(s) / std::sin(x) -
         (n - 1.0) / n * (mc / kPi) * std::sin(x) *
             (std::cos(s) + s * std::sin(s));
}

double resid3_circle(double mc, double n, double s) {
  const double x = kPi / mc;
  const double q = 2.0 * x - s;
  return (std::cos(q) / std::cos(x)) / n -
         (n - 1.0) / n * (mc / kPi) * std::cos(x) *
             (std::sin(q) - q * std::cos(q));
}

double r2_circle(double mc, double n, double s) {
  return n / (n - 1.0) * std::sin(s) / std::sin(kPi / mc);
}

double r3_circle(double mc, double n, double s) {
  return n / (n - 1.0) * std::cos(2.0 * kPi / mc - s) / std::cos(kPi / mc);
}

double d2f_circle(double mc, double n, double s) {
  return 2.0 - n / (n - 1.0) * mc / (2.0 * kPi) * (2.0 * s + std::sin(2.0 * s));
}

double d3f_circle(double mc, double n, double s) {
  const double x = kPi / mc;
  const double sec2 = 1.0 / (std::cos(x) * std::cos(x));
  const double nm1 = n - 1.0;
  const double A =
      n * (nm1 * (2.0 * (n - 2.0) / n - (mc / kPi) * s) - sec2) /
      (2.0 * nm1 * nm1);
  const double B =
      n * (nm1 * (2.0 - (mc / kPi) * s) + sec2) / (2.0 * nm1 * nm1);
  return A - B * std::cos(4.0 * x - 2.0 * s);
}

double resid2_torus(double M, double n, double s) {
  const double y = 2.0 * kPi / M;
  return std::sin(s) / std::sin(y) -
         (n - 1.0) / (n + 1.0) * (M / (2.0 * kPi)) * std::sin(y) *
             (std::cos(s) + s * std::sin(s));
}

double resid3_torus(double M, double n, double s) {
  const double y = 2.0 * kPi / M;
  const double q = 2.0 * y - s;
  return (std::cos(q) / std::cos(y)) / n -
         (n - 1.0) / (2.0 * n) * (M / (2.0 * kPi)) * std::cos(y) *
             (std::sin(q) - q * std::cos(q));
}

double r2_torus(double M, double n, double s) {
  return 2.0 * n / (n - 1.0) * std::sin(s) / std::sin(2.0 * kPi / M);
}

double r3_torus(double M, double n, double s) {
  return 2.0 * n / (n - 1.0) * std::cos(4.0 * kPi / M - s) /
         std::cos(2.0 * kPi / M);
}

double d2f_torus(double M, double n, double s) {
  return 4.0 - n / (n - 1.0) * M / (2.0 * kPi) * (2.0 * s + std::sin(2.0 * s));
}

double d3f_torus(double M, double n, double s) {
  const double y = 2.0 * kPi / M;
  const double sec2 = 1.0 / (std::cos(y) * std::cos(y));
  const double nm1 = n - 1.0;
  const double A =
      n * (nm1 * (2.0 * (n - 2.0) / n - (M / (2.0 * kPi)) * s) - 2.0 * sec2) /
      (nm1 * nm1);
  const double B =
      n * (nm1 * (2.0 - (M / (2.0 * kPi)) * s) + 2.0 * sec2) / (nm1 * nm1);
  return A - B * std::cos(8.0 * kPi / M - 2.0 * s);
}

namespace {

// Bisection to width 1e-13 followed by secant polish.  f must bracket a
// root on [a, b]; throws SolverError otherwise or if the polished residual
// stays above 1e-12.
template <typename F>
double solve_bracketed(F&& f, double a, double b, const char* what) {
  double fa = f(a);
  double fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (fa * fb > 0.0)
    throw SolverError(std::string(what) +
                          ": no sign change over the regime bracket",
                      fa, fb);
  while (b - a > 1e-13) {
    const double m = 0.5 * (a + b);
    if (m <= a || m >= b) break;  // bracket at floating-point resolution
    const double fm = f(m);
    if (fm == 0.0) return m;
    if (fa * fm < 0.0) {
      b = m;
      fb = fm;
    } else {
      a = m;
      fa = fm;
    }
  }
  // Secant polish from the bracket endpoints.
  double best = 0.5 * (a + b);
  double fbest = f(best);
  double x0 = a, f0 = fa, x1 = b, f1 = fb;
  for (int i = 0; i < 4 && f1 != f0; ++i) {
    const double x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
    if (!(x2 >= a && x2 <= b)) break;
    const double f2 = f(x2);
    if (std::fabs(f2) < std::fabs(fbest)) {
      best = x2;
      fbest = f2;
    }
    x0 = x1;
    f0 = f1;
    x1 = x2;
    f1 = f2;
  }
  if (!(std::fabs(fbest) <= 1e-12))
    throw SolverError(std::string(what) + ": polished residual " +
                          std::to_string(fbest) + " exceeds 1e-12",
                      fa, fb);
  return best;
}

void check_circle_floor(double mc) {
  if (!(mc > 2.5))
    throw std::domain_error(
        "circle family: per-circle count must exceed the analytic "
        "continuation floor 2.5, got " + std::to_string(mc));
}

void check_n_above_1(double n) {
  if (!(n > 1.0))
    throw std::domain_error(
        "the width equation requires n > 1; use the n = 1 closed forms "
        "(limit_n1), got n=" + std::to_string(n));
}

}  // namespace

Root solve_circle(double mc, double n) {
  check_circle_floor(mc);
  check_n_above_1(n);
  const double half = kPi / mc;
  Root out;
  if (resid2_circle(mc, n, half) >= 0.0) {
    out.regime = Regime::TwoOverlap;
    out.s = solve_bracketed(
        [&](double t) { return resid2_circle(mc, n, t); }, 0.0, half,
        "circle two-overlap");
    out.r = r2_circle(mc, n, out.s);
    out.d = d2f_circle(mc, n, out.s);
  } else {
    out.regime = Regime::ThreeOverlap;
    out.s = solve_bracketed(
        [&](double t) { return resid3_circle(mc, n, t); }, half, 2.0 * half,
        "circle three-overlap");
    out.r = r3_circle(mc, n, out.s);
    out.d = d3f_circle(mc, n, out.s);
  }
  return out;
}

Root solve_torus(double M, double n) {
  check_circle_floor(M / 2.0);
  check_n_above_1(n);
  const double half = 2.0 * kPi / M;
  Root out;
  if (resid2_torus(M, n, half) >= 0.0) {
    out.regime = Regime::TwoOverlap;
    out.s = solve_bracketed(
        [&](double t) { return resid2_torus(M, n, t); }, 0.0, half,
        "torus two-overlap");
    out.r = r2_torus(M, n, out.s);
    out.d = d2f_torus(M, n, out.s);
  } else {
    out.regime = Regime::ThreeOverlap;
    out.s = solve_bracketed(
        [&](double t) { return resid3_torus(M, n, t); }, half, 2.0 * half,
        "torus three-overlap");
    out.r = r3_torus(M, n, out.s);
    out.d = d3f_torus(M, n, out.s);
  }
  return out;
}

double n1_r_circle(double mc) { return mc / kPi * std::sin(kPi / mc); }

double n1_d_circle(double mc) {
  const double r = n1_r_circle(mc);
  return 2.0 - 2.0 * r * r;
}

double n1_r_torus(double M) {
  return M / (2.0 * kPi) * std::sin(2.0 * kPi / M);
}

double n1_d_torus(double M) {
  const double r = n1_r_torus(M);
  return 4.0 - 2.0 * r * r;
}

}  // namespace family

double residual_s(const ProblemSpec& spec, double s, Regime regime) {
  validate_spec(spec);
  family::check_n_above_1(spec.n);
  const double m_eff = effective_count(spec);
  const double delta = spacing(m_eff);
  if (!(s >= 0.0 && s <= delta))
    throw std::domain_error("residual_s: s in [0, delta] = [0, " +
                            std::to_string(delta) + "] required, got s=" +
                            std::to_string(s));
  const bool two = regime == Regime::TwoOverlap;
  switch (spec.manifold) {
    case Manifold::Circle:
      return two ? family::resid2_circle(spec.M, spec.n, s)
                 : family::resid3_circle(spec.M, spec.n, s);
    case Manifold::TorusJoint:
      return two ? family::resid2_circle(m_eff, spec.n, s)
                 : family::resid3_circle(m_eff, spec.n, s);
    case Manifold::TorusFactorial:
      return two ? family::resid2_torus(spec.M, spec.n, s)
                 : family::resid3_torus(spec.M, spec.n, s);
  }
  return 0.0;
}

std::pair<double, Regime> solve_s(const ProblemSpec& spec) {
  validate_spec(spec);
  family::check_n_above_1(spec.n);
  if (spec.manifold == Manifold::TorusFactorial) {
    const family::Root root = family::solve_torus(spec.M, spec.n);
    return {root.s, root.regime};
  }
  const family::Root root =
      family::solve_circle(effective_count(spec), spec.n);
  return {root.s, root.regime};
}

double optimal_r(const ProblemSpec& spec, double s, Regime regime) {
  validate_spec(spec);
  family::check_n_above_1(spec.n);
  const double m_eff = effective_count(spec);
  const bool two = regime == Regime::TwoOverlap;
  if (spec.manifold == Manifold::TorusFactorial)
    return two ? family::r2_torus(spec.M, spec.n, s)
               : family::r3_torus(spec.M, spec.n, s);
  return two ? family::r2_circle(m_eff, spec.n, s)
             : family::r3_circle(m_eff, spec.n, s);
}

double objective_closed_form(const ProblemSpec& spec, double s, Regime regime) {
  validate_spec(spec);
  family::check_n_above_1(spec.n);
  const double m_eff = effective_count(spec);
  const bool two = regime == Regime::TwoOverlap;
  switch (spec.manifold) {
    case Manifold::Circle:
      return two ? family::d2f_circle(spec.M, spec.n, s)
                 : family::d3f_circle(spec.M, spec.n, s);
    case Manifold::TorusJoint:
      // Two independent axis problems at sqrt(M) units each.
      return 2.0 * (two ? family::d2f_circle(m_eff, spec.n, s)
                        : family::d3f_circle(m_eff, spec.n, s));
    case Manifold::TorusFactorial:
      return two ? family::d2f_torus(spec.M, spec.n, s)
                 : family::d3f_torus(spec.M, spec.n, s);
  }
  return 0.0;
}

Solution solve(const ProblemSpec& spec) {
  validate_spec(spec);
  const double m_eff = effective_count(spec);
  Solution sol;
  sol.spec = spec;

  if (spec.n == 1.0) {
    // Hard assignment: indicator posterior, no variance term.
    sol.regime = Regime::TwoOverlap;
    sol.s = 0.0;
    sol.s_normalized = 0.0;
    switch (spec.manifold) {
      case Manifold::Circle:
        sol.r = family::n1_r_circle(spec.M);
        sol.d_total = family::n1_d_circle(spec.M);
        break;
      case Manifold::TorusJoint:
        sol.r = family::n1_r_circle(m_eff);
        sol.d_total = 2.0 * family::n1_d_circle(m_eff);
        break;
      case Manifold::TorusFactorial:
        sol.r = family::n1_r_torus(spec.M);
        sol.d_total = family::n1_d_torus(spec.M);
        break;
    }
    sol.d1 = sol.d_total;
    sol.d2 = 0.0;
    return sol;
  }

  const auto [s, regime] = solve_s(spec);
  sol.regime = regime;
  sol.s = s;
  sol.s_normalized = s / (kPi / m_eff);
  sol.r = optimal_r(spec, s, regime);
  sol.d_total = objective_closed_form(spec, s, regime);
  const QuadResult split = objective_folded(spec, s, regime, sol.r);
  sol.d1 = split.d1;
  sol.d2 = split.d2;
  return sol;
}

}  // namespace tvq
