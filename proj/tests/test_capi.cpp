// Exercises the shared-library C interface end to end: status codes, the
// thread-local error message, opaque profile handles, and determinism.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstring>
#include <string>

#include "torusvq/torusvq.h"

TEST_CASE("version string") {
  CHECK(std::string(tvq_version()) == "1.0.0");
}

TEST_CASE("solve through the C interface matches the frozen solution") {
  tvq_solution sol;
  REQUIRE(tvq_solve(TVQ_MANIFOLD_CIRCLE, 8.0, 2.0, &sol) == TVQ_OK);
  CHECK(sol.regime == TVQ_REGIME_TWO_OVERLAP);
  CHECK(sol.m_eff == doctest::Approx(8.0).epsilon(1e-15));
  CHECK(sol.s == doctest::Approx(0.1909905013369979458671).epsilon(1e-13));
  CHECK(sol.r == doctest::Approx(0.9921071184504134105072).epsilon(1e-13));
  CHECK(sol.d_total ==
        doctest::Approx(0.07806927652959391928805).epsilon(1e-13));
  CHECK(sol.d1 + sol.d2 ==
        doctest::Approx(sol.d_total).epsilon(1e-10));

  tvq_solution joint;
  REQUIRE(tvq_solve(TVQ_MANIFOLD_TORUS_JOINT, 64.0, 2.0, &joint) == TVQ_OK);
  CHECK(joint.d_total ==
        doctest::Approx(0.1561385530591878385761).epsilon(1e-13));
  CHECK(joint.m_eff == doctest::Approx(8.0).epsilon(1e-15));
}

TEST_CASE("domain violations set the status and the error message") {
  tvq_solution sol;
  CHECK(tvq_solve(TVQ_MANIFOLD_CIRCLE, 3.0, 2.0, &sol) == TVQ_ERR_DOMAIN);
  CHECK(std::string(tvq_last_error()).find("M >= 4") != std::string::npos);
  // A later success clears the message.
  CHECK(tvq_solve(TVQ_MANIFOLD_CIRCLE, 8.0, 2.0, &sol) == TVQ_OK);
  CHECK(std::strlen(tvq_last_error()) == 0);
}

TEST_CASE("null and out-of-range arguments are rejected") {
  CHECK(tvq_solve(TVQ_MANIFOLD_CIRCLE, 8.0, 2.0, nullptr) ==
        TVQ_ERR_INVALID_ARG);
  tvq_solution sol;
  CHECK(tvq_solve(42, 8.0, 2.0, &sol) == TVQ_ERR_INVALID_ARG);
  double out = 0.0;
  CHECK(tvq_residual_s(TVQ_MANIFOLD_CIRCLE, 8.0, 2.0, 0.1, 7, &out) ==
        TVQ_ERR_INVALID_ARG);
  CHECK(tvq_profile_build(8.0, 0.1, TVQ_REGIME_TWO_OVERLAP, nullptr) ==
        TVQ_ERR_INVALID_ARG);
}

TEST_CASE("opaque profile handles") {
  tvq_profile* prof = nullptr;
  REQUIRE(tvq_profile_build(8.0, 0.1909905013369979458671,
                            TVQ_REGIME_TWO_OVERLAP, &prof) == TVQ_OK);
  REQUIRE(prof != nullptr);

  double m_eff = 0.0, s = 0.0, delta = 0.0;
  int regime = -1;
  CHECK(tvq_profile_info(prof, &m_eff, &s, &delta, &regime) == TVQ_OK);
  CHECK(m_eff == doctest::Approx(8.0).epsilon(1e-15));
  CHECK(s == doctest::Approx(0.1909905013369979458671).epsilon(1e-15));
  CHECK(regime == TVQ_REGIME_TWO_OVERLAP);

  double p = 0.0;
  CHECK(tvq_profile_eval(prof, 0.25, &p) == TVQ_OK);
  CHECK(p == doctest::Approx(0.874582966881664620603).epsilon(1e-13));

  int ys[3];
  double ps[3];
  int count = 0;
  CHECK(tvq_profile_all(prof, 0.25, ys, ps, 3, &count) == TVQ_OK);
  REQUIRE(count == 2);
  CHECK(ys[0] == 0);
  CHECK(ys[1] == 1);
  CHECK(ps[0] + ps[1] == doctest::Approx(1.0).epsilon(1e-13));
  // Capacity below the active count is an argument error.
  CHECK(tvq_profile_all(prof, 0.25, ys, ps, 1, &count) ==
        TVQ_ERR_INVALID_ARG);

  tvq_profile_free(prof);
  // Freeing a null handle is a no-op, not a crash.
  tvq_profile_free(nullptr);
}

TEST_CASE("quadrature and stationarity through the C interface") {
  tvq_solution sol;
  REQUIRE(tvq_solve(TVQ_MANIFOLD_CIRCLE, 8.0, 2.0, &sol) == TVQ_OK);
  tvq_quad_result q;
  REQUIRE(tvq_quadrature(TVQ_MANIFOLD_CIRCLE, 8.0, 2.0, sol.s, sol.regime,
                         sol.r, 1e-11, &q) == TVQ_OK);
  CHECK(q.d1 + q.d2 == doctest::Approx(sol.d_total).epsilon(1e-9));
  CHECK(q.segments > 0);

  double resid = 0.0;
  REQUIRE(tvq_stationarity_p(TVQ_MANIFOLD_CIRCLE, 8.0, 2.0, sol.s,
                             sol.regime, sol.r, 0.25, 0, &resid) == TVQ_OK);
  CHECK(std::abs(resid) <= 1e-9);
  double xres[2] = {1.0, 1.0};
  REQUIRE(tvq_stationarity_x(TVQ_MANIFOLD_CIRCLE, 8.0, 2.0, sol.s,
                             sol.regime, sol.r, 1e-12, xres) == TVQ_OK);
  CHECK(std::abs(xres[0]) <= 1e-9);
  CHECK(std::abs(xres[1]) <= 1e-9);
}

TEST_CASE("Monte Carlo determinism through the C interface") {
  tvq_solution sol;
  REQUIRE(tvq_solve(TVQ_MANIFOLD_CIRCLE, 8.0, 2.0, &sol) == TVQ_OK);
  tvq_mc_result a, b;
  REQUIRE(tvq_mc_estimate(TVQ_MANIFOLD_CIRCLE, 8.0, 2.0, sol.s, sol.regime,
                          sol.r, 100000, 7, &a) == TVQ_OK);
  REQUIRE(tvq_mc_estimate(TVQ_MANIFOLD_CIRCLE, 8.0, 2.0, sol.s, sol.regime,
                          sol.r, 100000, 7, &b) == TVQ_OK);
  CHECK(a.d1_hat == b.d1_hat);
  CHECK(a.d2_hat == b.d2_hat);
  CHECK(a.d1_se == b.d1_se);
  CHECK(a.samples == 100000);
  CHECK(a.seed == 7);
}

TEST_CASE("comparator and boundaries through the C interface") {
  tvq_comparison c;
  REQUIRE(tvq_compare(8.0, 100.0, &c) == TVQ_OK);
  CHECK(c.winner == TVQ_MANIFOLD_TORUS_FACTORIAL);
  CHECK(c.d_factorial ==
        doctest::Approx(0.1041207009597176600737).epsilon(1e-12));

  double Mb = 0.0;
  int found = 0;
  REQUIRE(tvq_winner_boundary(1000.0, &Mb, &found) == TVQ_OK);
  CHECK(found == 1);
  CHECK(Mb == doctest::Approx(11.59206551836378428291).epsilon(2e-6));
  REQUIRE(tvq_winner_boundary(1.0, &Mb, &found) == TVQ_OK);
  CHECK(found == 0);

  double cross = 0.0;
  REQUIRE(tvq_asymptotic_crossing_m(&cross) == TVQ_OK);
  CHECK(cross == doctest::Approx(11.73571873961597703256).epsilon(1e-10));
}
