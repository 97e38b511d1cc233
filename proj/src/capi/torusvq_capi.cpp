#include "torusvq/torusvq.h"

#include <cstring>
#include <new>
#include <string>

#include "core/activation.hpp"
#include "core/asymptotics.hpp"
#include "core/comparator.hpp"
#include "core/oracle.hpp"
#include "core/profile.hpp"
#include "core/solver.hpp"
#include "core/types.hpp"

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

// Runs fn(), translating C++ exceptions into status codes and recording
// the message for tvq_last_error().
template <typename Fn>
tvq_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return TVQ_OK;
  } catch (const std::domain_error& e) {
    set_error(e.what());
    return TVQ_ERR_DOMAIN;
  } catch (const tvq::SolverError& e) {
    set_error(e.what());
    return TVQ_ERR_SOLVER;
  } catch (const tvq::QuadratureError& e) {
    set_error(e.what());
    return TVQ_ERR_QUADRATURE;
  } catch (const std::exception& e) {
    set_error(e.what());
    return TVQ_ERR_INVALID_ARG;
  }
}

bool to_manifold(int manifold, tvq::Manifold* out) {
  switch (manifold) {
    case TVQ_MANIFOLD_CIRCLE: *out = tvq::Manifold::Circle; return true;
    case TVQ_MANIFOLD_TORUS_JOINT: *out = tvq::Manifold::TorusJoint; return true;
    case TVQ_MANIFOLD_TORUS_FACTORIAL:
      *out = tvq::Manifold::TorusFactorial;
      return true;
  }
  return false;
}

bool to_regime(int regime, tvq::Regime* out) {
  switch (regime) {
    case TVQ_REGIME_TWO_OVERLAP: *out = tvq::Regime::TwoOverlap; return true;
    case TVQ_REGIME_THREE_OVERLAP:
      *out = tvq::Regime::ThreeOverlap;
      return true;
  }
  return false;
}

tvq_status bad_arg(const char* what) {
  set_error(std::string("invalid argument: ") + what);
  return TVQ_ERR_INVALID_ARG;
}

tvq::ProblemSpec make_spec(tvq::Manifold m, double M, double n) {
  tvq::ProblemSpec spec;
  spec.manifold = m;
  spec.M = M;
  spec.n = n;
  return spec;
}

// Builds the per-circle profile implied by (manifold, M, s, regime).
tvq::PosteriorProfile spec_profile(tvq::Manifold m, double M, double s,
                                   tvq::Regime reg) {
  tvq::ProblemSpec spec = make_spec(m, M, 2.0);  // n plays no role here
  return tvq::build_profile(tvq::effective_count(spec), s, reg);
}

}  // namespace

struct tvq_profile {
  tvq::PosteriorProfile impl;
};

extern "C" {

const char* tvq_version(void) { return "1.0.0"; }

const char* tvq_last_error(void) { return g_last_error.c_str(); }

tvq_status tvq_solve(int manifold, double M, double n, tvq_solution* out) {
  if (!out) return bad_arg("out is null");
  tvq::Manifold m;
  if (!to_manifold(manifold, &m)) return bad_arg("manifold enum");
  return guarded([&] {
    const tvq::Solution sol = tvq::solve(make_spec(m, M, n));
    out->s = sol.s;
    out->s_normalized = sol.s_normalized;
    out->r = sol.r;
    out->d1 = sol.d1;
    out->d2 = sol.d2;
    out->d_total = sol.d_total;
    out->m_eff = tvq::effective_count(sol.spec);
    out->regime = sol.regime == tvq::Regime::TwoOverlap
                      ? TVQ_REGIME_TWO_OVERLAP
                      : TVQ_REGIME_THREE_OVERLAP;
  });
}

tvq_status tvq_residual_s(int manifold, double M, double n, double s,
                          int regime, double* out) {
  if (!out) return bad_arg("out is null");
  tvq::Manifold m;
  tvq::Regime reg;
  if (!to_manifold(manifold, &m)) return bad_arg("manifold enum");
  if (!to_regime(regime, &reg)) return bad_arg("regime enum");
  return guarded([&] { *out = tvq::residual_s(make_spec(m, M, n), s, reg); });
}

tvq_status tvq_solve_s(int manifold, double M, double n, double* s_out,
                       int* regime_out) {
  if (!s_out || !regime_out) return bad_arg("output is null");
  tvq::Manifold m;
  if (!to_manifold(manifold, &m)) return bad_arg("manifold enum");
  return guarded([&] {
    const auto [s, reg] = tvq::solve_s(make_spec(m, M, n));
    *s_out = s;
    *regime_out = reg == tvq::Regime::TwoOverlap ? TVQ_REGIME_TWO_OVERLAP
                                                 : TVQ_REGIME_THREE_OVERLAP;
  });
}

tvq_status tvq_optimal_r(int manifold, double M, double n, double s,
                         int regime, double* out) {
  if (!out) return bad_arg("out is null");
  tvq::Manifold m;
  tvq::Regime reg;
  if (!to_manifold(manifold, &m)) return bad_arg("manifold enum");
  if (!to_regime(regime, &reg)) return bad_arg("regime enum");
  return guarded([&] { *out = tvq::optimal_r(make_spec(m, M, n), s, reg); });
}

tvq_status tvq_objective_closed_form(int manifold, double M, double n,
                                     double s, int regime, double* out) {
  if (!out) return bad_arg("out is null");
  tvq::Manifold m;
  tvq::Regime reg;
  if (!to_manifold(manifold, &m)) return bad_arg("manifold enum");
  if (!to_regime(regime, &reg)) return bad_arg("regime enum");
  return guarded(
      [&] { *out = tvq::objective_closed_form(make_spec(m, M, n), s, reg); });
}

tvq_status tvq_profile_build(double m_eff, double s, int regime,
                             tvq_profile** out) {
  if (!out) return bad_arg("out is null");
  tvq::Regime reg;
  if (!to_regime(regime, &reg)) return bad_arg("regime enum");
  return guarded([&] {
    auto* handle = new tvq_profile{tvq::build_profile(m_eff, s, reg)};
    *out = handle;
  });
}

void tvq_profile_free(tvq_profile* profile) { delete profile; }

tvq_status tvq_profile_eval(const tvq_profile* profile, double theta,
                            double* out) {
  if (!profile || !out) return bad_arg("profile/out is null");
  return guarded([&] { *out = tvq::posterior_eval(profile->impl, theta); });
}

tvq_status tvq_profile_all(const tvq_profile* profile, double theta, int* ys,
                           double* ps, int cap, int* n_out) {
  if (!profile || !ys || !ps || !n_out) return bad_arg("profile/out is null");
  if (cap < 3) return bad_arg("cap >= 3 required");
  return guarded([&] {
    const auto active = tvq::posterior_all(profile->impl, theta);
    int k = 0;
    for (const auto& a : active) {
      ys[k] = a.y;
      ps[k] = a.p;
      ++k;
    }
    *n_out = k;
  });
}

tvq_status tvq_profile_info(const tvq_profile* profile, double* m_eff,
                            double* s, double* delta, int* regime) {
  if (!profile) return bad_arg("profile is null");
  if (m_eff) *m_eff = profile->impl.m_eff;
  if (s) *s = profile->impl.s;
  if (delta) *delta = profile->impl.delta;
  if (regime)
    *regime = profile->impl.regime == tvq::Regime::TwoOverlap
                  ? TVQ_REGIME_TWO_OVERLAP
                  : TVQ_REGIME_THREE_OVERLAP;
  g_last_error.clear();
  return TVQ_OK;
}

tvq_status tvq_reference_vector(double r, double m_eff, int y, double out2[2]) {
  if (!out2) return bad_arg("out is null");
  return guarded([&] {
    const auto v = tvq::reference_vector(r, m_eff, y);
    out2[0] = v[0];
    out2[1] = v[1];
  });
}

tvq_status tvq_quadrature(int manifold, double M, double n, double s,
                          int regime, double r, double tol,
                          tvq_quad_result* out) {
  if (!out) return bad_arg("out is null");
  tvq::Manifold m;
  tvq::Regime reg;
  if (!to_manifold(manifold, &m)) return bad_arg("manifold enum");
  if (!to_regime(regime, &reg)) return bad_arg("regime enum");
  return guarded([&] {
    const auto prof = spec_profile(m, M, s, reg);
    const tvq::QuadResult q =
        tvq::quadrature_objective(prof, r, make_spec(m, M, n), tol);
    out->d1 = q.d1;
    out->d2 = q.d2;
    out->abs_error = q.abs_error;
    out->segments = q.segments;
  });
}

tvq_status tvq_quadrature_folded(int manifold, double M, double n, double s,
                                 int regime, double r, tvq_quad_result* out) {
  if (!out) return bad_arg("out is null");
  tvq::Manifold m;
  tvq::Regime reg;
  if (!to_manifold(manifold, &m)) return bad_arg("manifold enum");
  if (!to_regime(regime, &reg)) return bad_arg("regime enum");
  return guarded([&] {
    const tvq::QuadResult q =
        tvq::objective_folded(make_spec(m, M, n), s, reg, r);
    out->d1 = q.d1;
    out->d2 = q.d2;
    out->abs_error = q.abs_error;
    out->segments = q.segments;
  });
}

tvq_status tvq_stationarity_p(int manifold, double M, double n, double s,
                              int regime, double r, double theta, int y,
                              double* out) {
  if (!out) return bad_arg("out is null");
  tvq::Manifold m;
  tvq::Regime reg;
  if (!to_manifold(manifold, &m)) return bad_arg("manifold enum");
  if (!to_regime(regime, &reg)) return bad_arg("regime enum");
  return guarded([&] {
    const auto prof = spec_profile(m, M, s, reg);
    *out = tvq::stationarity_residual_P(prof, r, make_spec(m, M, n), theta, y);
  });
}

tvq_status tvq_stationarity_x(int manifold, double M, double n, double s,
                              int regime, double r, double tol,
                              double out2[2]) {
  if (!out2) return bad_arg("out is null");
  tvq::Manifold m;
  tvq::Regime reg;
  if (!to_manifold(manifold, &m)) return bad_arg("manifold enum");
  if (!to_regime(regime, &reg)) return bad_arg("regime enum");
  return guarded([&] {
    const auto prof = spec_profile(m, M, s, reg);
    const auto v =
        tvq::stationarity_residual_X(prof, r, make_spec(m, M, n), tol);
    out2[0] = v[0];
    out2[1] = v[1];
  });
}

tvq_status tvq_numeric_minimize_s(int manifold, double M, double n, int regime,
                                  tvq_minimize_result* out) {
  if (!out) return bad_arg("out is null");
  tvq::Manifold m;
  tvq::Regime reg;
  if (!to_manifold(manifold, &m)) return bad_arg("manifold enum");
  if (!to_regime(regime, &reg)) return bad_arg("regime enum");
  return guarded([&] {
    const tvq::MinimizeResult r = tvq::numeric_minimize_s(make_spec(m, M, n), reg);
    out->s = r.s;
    out->d = r.d;
    out->regime = r.regime == tvq::Regime::TwoOverlap
                      ? TVQ_REGIME_TWO_OVERLAP
                      : TVQ_REGIME_THREE_OVERLAP;
  });
}

tvq_status tvq_mc_estimate(int manifold, double M, double n, double s,
                           int regime, double r, long long samples,
                           uint64_t seed, tvq_mc_result* out) {
  if (!out) return bad_arg("out is null");
  tvq::Manifold m;
  tvq::Regime reg;
  if (!to_manifold(manifold, &m)) return bad_arg("manifold enum");
  if (!to_regime(regime, &reg)) return bad_arg("regime enum");
  return guarded([&] {
    const auto prof = spec_profile(m, M, s, reg);
    const tvq::McResult mc =
        tvq::mc_estimate(prof, r, make_spec(m, M, n), samples, seed);
    out->d1_hat = mc.d1_hat;
    out->d1_se = mc.d1_se;
    out->d2_hat = mc.d2_hat;
    out->d2_se = mc.d2_se;
    out->samples = mc.samples;
    out->seed = mc.seed;
  });
}

tvq_status tvq_expand_large_m(int manifold, double M, double n,
                              tvq_series_point* out) {
  if (!out) return bad_arg("out is null");
  tvq::Manifold m;
  if (!to_manifold(manifold, &m)) return bad_arg("manifold enum");
  return guarded([&] {
    const tvq::SeriesPoint p = tvq::expand_large_M(make_spec(m, M, n));
    out->s = p.s;
    out->r = p.r;
    out->d = p.d;
  });
}

tvq_status tvq_limit_n1(int manifold, double M, tvq_series_point* out) {
  if (!out) return bad_arg("out is null");
  tvq::Manifold m;
  if (!to_manifold(manifold, &m)) return bad_arg("manifold enum");
  return guarded([&] {
    const tvq::SeriesPoint p = tvq::limit_n1(make_spec(m, M, 1.0));
    out->s = p.s;
    out->r = p.r;
    out->d = p.d;
  });
}

tvq_status tvq_expand_large_n(int manifold, double M, double n,
                              tvq_series_point* out) {
  if (!out) return bad_arg("out is null");
  tvq::Manifold m;
  if (!to_manifold(manifold, &m)) return bad_arg("manifold enum");
  return guarded([&] {
    const tvq::SeriesPoint p = tvq::expand_large_n(make_spec(m, M, n));
    out->s = p.s;
    out->r = p.r;
    out->d = p.d;
  });
}

tvq_status tvq_limit_n_times_d(int manifold, double M, double* out) {
  if (!out) return bad_arg("out is null");
  tvq::Manifold m;
  if (!to_manifold(manifold, &m)) return bad_arg("manifold enum");
  return guarded(
      [&] { *out = tvq::limit_n_times_d(make_spec(m, M, 2.0)); });
}

tvq_status tvq_linear_manifold_limit(double n, double* s_out, double* d_out) {
  if (!s_out || !d_out) return bad_arg("output is null");
  return guarded([&] {
    const tvq::LinearLimit l = tvq::linear_manifold_limit(n);
    *s_out = l.s;
    *d_out = l.d;
  });
}

tvq_status tvq_boundary_two_three(double m_eff, int manifold, double* n_exact,
                                  double* n_asymptote) {
  if (!n_exact || !n_asymptote) return bad_arg("output is null");
  tvq::Manifold m;
  if (!to_manifold(manifold, &m)) return bad_arg("manifold enum");
  return guarded([&] {
    const tvq::BoundaryN b = tvq::boundary_two_three(m_eff, m);
    *n_exact = b.n_exact;
    *n_asymptote = b.n_asymptote;
  });
}

tvq_status tvq_asymptotic_crossing_m(double* out) {
  if (!out) return bad_arg("out is null");
  return guarded([&] { *out = tvq::asymptotic_crossing_M(); });
}

tvq_status tvq_compare(double M, double n, tvq_comparison* out) {
  if (!out) return bad_arg("out is null");
  return guarded([&] {
    const tvq::Comparison c = tvq::compare(M, n);
    out->d_joint = c.d_joint;
    out->d_factorial = c.d_factorial;
    out->rel_gap = c.rel_gap;
    out->winner = c.winner == tvq::Manifold::TorusFactorial
                      ? TVQ_MANIFOLD_TORUS_FACTORIAL
                      : TVQ_MANIFOLD_TORUS_JOINT;
  });
}

tvq_status tvq_winner_boundary(double n, double* M_out, int* found) {
  if (!M_out || !found) return bad_arg("output is null");
  return guarded([&] {
    const auto b = tvq::winner_boundary(n);
    *found = b.has_value() ? 1 : 0;
    if (b) *M_out = *b;
  });
}

tvq_status tvq_activation_threshold(double s, double M, double* out) {
  if (!out) return bad_arg("out is null");
  return guarded([&] { *out = tvq::activation_threshold(s, M); });
}

tvq_status tvq_activation_eval(int y, double theta, double s, double M,
                               double* out) {
  if (!out) return bad_arg("out is null");
  return guarded([&] { *out = tvq::activation_eval(y, theta, s, M); });
}

tvq_status tvq_approx_posterior(double theta, double s, double M,
                                double* out) {
  if (!out) return bad_arg("out is null");
  return guarded([&] { *out = tvq::approx_posterior(theta, s, M); });
}

tvq_status tvq_approx_error(double s, double M, double* sup_error,
                            double* argmax, double* exact_cubic,
                            double* approx_cubic) {
  if (!sup_error) return bad_arg("sup_error is null");
  return guarded([&] {
    const tvq::ApproxError e = tvq::approx_error(s, M);
    *sup_error = e.sup_error;
    if (argmax) *argmax = e.argmax;
    if (exact_cubic) *exact_cubic = e.exact_cubic;
    if (approx_cubic) *approx_cubic = e.approx_cubic;
  });
}

tvq_status tvq_fitted_transition_exponent(double s, double M, double* out) {
  if (!out) return bad_arg("out is null");
  return guarded([&] { *out = tvq::fitted_transition_exponent(s, M); });
}

}  // extern "C"
