#include "core/asymptotics.hpp"

#include <cmath>

#include "core/solver.hpp"

namespace tvq {

namespace {

SeriesPoint large_M_circle(double mc, double n) {
  const double x = kPi / mc;
  SeriesPoint out;
  out.s = (n - 1.0) / n * x +
          (n - 1.0) * (n * n - 4.0 * n + 2.0) / (3.0 * n * n * n) * x * x * x;
  out.r = 1.0 + (2.0 * n * n - 6.0 * n + 3.0) / (6.0 * n * n) * x * x;
  out.d = 2.0 * (2.0 * n - 1.0) / (3.0 * n * n) * x * x;
  return out;
}

SeriesPoint large_M_torus(double M, double n) {
  const double y = 2.0 * kPi / M;
  const double np1 = n + 1.0;
  SeriesPoint out;
  out.s = (n - 1.0) / np1 * y +
          (n - 1.0) * (n * n - 6.0 * n + 1.0) / (3.0 * np1 * np1 * np1) * y *
              y * y;
  out.r = 2.0 * n / np1 +
          8.0 * n * (n * n - 4.0 * n + 1.0) / (3.0 * np1 * np1 * np1) * y * y;
  out.d = 4.0 / np1 + 64.0 * n * n / (3.0 * np1 * np1 * np1) * y * y;
  return out;
}

SeriesPoint large_n_circle(double mc, double n) {
  const double x = kPi / mc;
  const double cube =
      std::cbrt(3.0 * kPi / (mc * n * std::cos(x) * std::cos(x)));
  SeriesPoint out;
  out.s = 2.0 * x - cube;
  out.r = 0.5 / std::cos(x) * (2.0 - cube * cube);
  out.d = 2.0 / n * std::tan(x) * std::tan(x);
  return out;
}

SeriesPoint large_n_torus(double M, double n) {
  const double y = 2.0 * kPi / M;
  const double cube =
      std::cbrt(12.0 * kPi / (M * n * std::cos(y) * std::cos(y)));
  SeriesPoint out;
  out.s = 2.0 * y - cube;
  out.r = (2.0 - cube * cube) / std::cos(y);
  out.d = 4.0 / n * (2.0 / (std::cos(y) * std::cos(y)) - 1.0);
  return out;
}

}  // namespace

SeriesPoint expand_large_M(const ProblemSpec& spec) {
  validate_spec(spec);
  if (!(spec.n > 1.0))
    throw std::domain_error("expand_large_M: n > 1 required (n = 1 is exact)");
  switch (spec.manifold) {
    case Manifold::Circle:
      return large_M_circle(spec.M, spec.n);
    case Manifold::TorusJoint: {
      SeriesPoint p = large_M_circle(effective_count(spec), spec.n);
      p.d *= 2.0;
      return p;
    }
    case Manifold::TorusFactorial:
      return large_M_torus(spec.M, spec.n);
  }
  return {};
}

SeriesPoint limit_n1(const ProblemSpec& spec) {
  ProblemSpec at_one = spec;
  at_one.n = 1.0;
  validate_spec(at_one);
  SeriesPoint out;
  out.s = 0.0;
  switch (spec.manifold) {
    case Manifold::Circle:
      out.r = family::n1_r_circle(spec.M);
      out.d = family::n1_d_circle(spec.M);
      break;
    case Manifold::TorusJoint:
      out.r = family::n1_r_circle(effective_count(spec));
      out.d = 2.0 * family::n1_d_circle(effective_count(spec));
      break;
    case Manifold::TorusFactorial:
      out.r = family::n1_r_torus(spec.M);
      out.d = family::n1_d_torus(spec.M);
      break;
  }
  return out;
}

SeriesPoint expand_large_n(const ProblemSpec& spec) {
  validate_spec(spec);
  switch (spec.manifold) {
    case Manifold::Circle:
      return large_n_circle(spec.M, spec.n);
    case Manifold::TorusJoint: {
      SeriesPoint p = large_n_circle(effective_count(spec), spec.n);
      p.d *= 2.0;
      return p;
    }
    case Manifold::TorusFactorial:
      return large_n_torus(spec.M, spec.n);
  }
  return {};
}

double limit_n_times_d(const ProblemSpec& spec) {
  validate_spec(spec);
  switch (spec.manifold) {
    case Manifold::Circle: {
      const double t = std::tan(kPi / spec.M);
      return 2.0 * t * t;
    }
    case Manifold::TorusJoint: {
      const double t = std::tan(kPi / effective_count(spec));
      return 4.0 * t * t;
    }
    case Manifold::TorusFactorial: {
      const double y = 2.0 * kPi / spec.M;
      return 4.0 * (2.0 / (std::cos(y) * std::cos(y)) - 1.0);
    }
  }
  return 0.0;
}

LinearLimit linear_manifold_limit(double n) {
  if (!(n >= 1.0))
    throw std::domain_error("linear_manifold_limit: n >= 1 required");
  return {(n - 1.0) / (2.0 * n), (2.0 * n - 1.0) / (6.0 * n * n)};
}

BoundaryN boundary_two_three(double m_eff, Manifold manifold) {
  if (!(m_eff >= 4.0))
    throw std::domain_error("boundary_two_three: m_eff >= 4 required, got " +
                            std::to_string(m_eff));
  const double x = kPi / m_eff;
  const double P = (m_eff / kPi) * std::sin(x) * (std::cos(x) + x * std::sin(x));
  BoundaryN out;
  if (manifold == Manifold::TorusFactorial) {
    out.n_exact = (P + 1.0) / (P - 1.0);
    out.n_asymptote = 6.0 * m_eff * m_eff / (kPi * kPi);
  } else {
    out.n_exact = P / (P - 1.0);
    out.n_asymptote = 3.0 * m_eff * m_eff / (kPi * kPi);
  }
  return out;
}

double asymptotic_crossing_M() {
  const auto g = [](double M) {
    const double t = std::tan(kPi / std::sqrt(M));
    const double sec = 1.0 / std::cos(2.0 * kPi / M);
    return t * t - (2.0 * sec * sec - 1.0);
  };
  double a = 5.0, b = 40.0;
  double fa = g(a);
  for (int i = 0; i < 200 && b - a > 1e-12; ++i) {
    const double m = 0.5 * (a + b);
    const double fm = g(m);
    if (fa * fm <= 0.0) {
      b = m;
    } else {
      a = m;
      fa = fm;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace tvq
