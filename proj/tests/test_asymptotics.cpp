// Series expansions, limits, and regime/winner boundary curves.  Expected
// numbers are frozen from an independent high-precision oracle.

#include <cmath>

#include "doctest.h"

#include "core/asymptotics.hpp"
#include "core/solver.hpp"
#include "core/types.hpp"

using namespace tvq;

TEST_CASE("large-M series matches the exact solution") {
  SUBCASE("circle M=200, n=2 (frozen)") {
    const SeriesPoint sp = expand_large_M({Manifold::Circle, 200.0, 2.0});
    CHECK(sp.s == doctest::Approx(0.00785365865192572997303).epsilon(1e-13));
    CHECK(sp.r == doctest::Approx(0.9999897191620821985848).epsilon(1e-13));
    CHECK(sp.d ==
          doctest::Approx(0.0001233700550136169827354).epsilon(1e-13));
    const Solution sol = solve({Manifold::Circle, 200.0, 2.0});
    CHECK(sol.s == doctest::Approx(0.007853658619385288478914).epsilon(1e-12));
    CHECK(sol.r == doctest::Approx(0.9999897153887612839028).epsilon(1e-12));
    CHECK(sol.d_total ==
          doctest::Approx(0.0001233727604446547405077).epsilon(1e-12));
  }
  SUBCASE("the width error shrinks like M^-5") {
    const double d100 =
        std::fabs(expand_large_M({Manifold::Circle, 100.0, 2.0}).s -
                  solve({Manifold::Circle, 100.0, 2.0}).s);
    const double d200 =
        std::fabs(expand_large_M({Manifold::Circle, 200.0, 2.0}).s -
                  solve({Manifold::Circle, 200.0, 2.0}).s);
    CHECK(d100 == doctest::Approx(1.0412e-9).epsilon(1e-3));
    const double ratio = d100 / d200;
    // Next omitted order is x^5: halving x should shrink the error ~32x.
    CHECK(ratio > 10.67);
    CHECK(ratio < 96.0);
  }
  SUBCASE("circle series at M=400 is accurate to 1e-10") {
    const SeriesPoint sp = expand_large_M({Manifold::Circle, 400.0, 2.0});
    const Solution sol = solve({Manifold::Circle, 400.0, 2.0});
    CHECK(std::fabs(sp.s - sol.s) <= 1e-10);
    CHECK(std::fabs(sp.s - sol.s) ==
          doctest::Approx(1.0169e-12).epsilon(5e-2));
  }
  SUBCASE("factorial torus M=400, n=2 (frozen)") {
    const SeriesPoint sp =
        expand_large_M({Manifold::TorusFactorial, 400.0, 2.0});
    CHECK(sp.s == doctest::Approx(0.005235652811636133640121).epsilon(1e-13));
    CHECK(sp.r == doctest::Approx(1.333187116971835713206).epsilon(1e-13));
    CHECK(sp.d == doctest::Approx(1.334113153927987307348).epsilon(1e-13));
    const Solution sol = solve({Manifold::TorusFactorial, 400.0, 2.0});
    CHECK(sol.s ==
          doctest::Approx(0.005235652805603011482333).epsilon(1e-12));
    CHECK(sol.r == doctest::Approx(1.333296776704347558711).epsilon(1e-12));
    CHECK(sol.d_total ==
          doctest::Approx(1.33352828674457324305).epsilon(1e-12));
    CHECK(std::fabs(sp.s - sol.s) <= 1e-8);
  }
  SUBCASE("joint series doubles the per-axis circle") {
    const SeriesPoint joint =
        expand_large_M({Manifold::TorusJoint, 40000.0, 2.0});
    const SeriesPoint circ = expand_large_M({Manifold::Circle, 200.0, 2.0});
    CHECK(joint.s == doctest::Approx(circ.s).epsilon(1e-15));
    CHECK(joint.r == doctest::Approx(circ.r).epsilon(1e-15));
    CHECK(joint.d == doctest::Approx(2.0 * circ.d).epsilon(1e-15));
  }
  SUBCASE("n = 1 is exact, not a series") {
    CHECK_THROWS_AS(expand_large_M({Manifold::Circle, 200.0, 1.0}),
                    std::domain_error);
  }
}

TEST_CASE("single-event limit is consistent with the solver near n = 1") {
  const SeriesPoint lim = limit_n1({Manifold::Circle, 8.0});
  CHECK(lim.s == 0.0);
  CHECK(lim.r == doctest::Approx(0.9744953584044326451153).epsilon(1e-14));
  CHECK(lim.d == doctest::Approx(0.1007175928964327305189).epsilon(1e-14));
  const Solution near = solve({Manifold::Circle, 8.0, 1.0 + 1e-4});
  CHECK(std::fabs(near.r - lim.r) <= 1e-3);
  CHECK(std::fabs(near.d_total - lim.d) <= 1e-3);

  const SeriesPoint limf = limit_n1({Manifold::TorusFactorial, 16.0});
  CHECK(limf.d == doctest::Approx(2.100717592896432730519).epsilon(1e-14));
}

TEST_CASE("large-n expansion converges to the exact solution") {
  SUBCASE("circle M=8, n=1e6") {
    const Solution sol = solve({Manifold::Circle, 8.0, 1e6});
    CHECK(sol.s == doctest::Approx(0.7742643710796256821552).epsilon(1e-12));
    CHECK(sol.d_total ==
          doctest::Approx(3.429741642731635074111e-7).epsilon(1e-12));
    const SeriesPoint sp = expand_large_n({Manifold::Circle, 8.0, 1e6});
    CHECK(std::fabs(sp.d / sol.d_total - 1.0) <= 1e-3);
    CHECK(std::fabs(sp.s / sol.s - 1.0) <= 1e-3);
  }
  SUBCASE("factorial torus M=16, n=1e6") {
    const Solution sol = solve({Manifold::TorusFactorial, 16.0, 1e6});
    CHECK(sol.s == doctest::Approx(0.7713706002824899258365).epsilon(1e-12));
    CHECK(sol.d_total ==
          doctest::Approx(5.371491220155412164642e-6).epsilon(1e-12));
    const SeriesPoint sp = expand_large_n({Manifold::TorusFactorial, 16.0,
                                           1e6});
    CHECK(std::fabs(sp.d / sol.d_total - 1.0) <= 1e-3);
  }
  SUBCASE("the relative error decays with n") {
    const double rel_1000 =
        expand_large_n({Manifold::Circle, 8.0, 1000.0}).d /
            solve({Manifold::Circle, 8.0, 1000.0}).d_total -
        1.0;
    const double rel_1e6 =
        expand_large_n({Manifold::Circle, 8.0, 1e6}).d /
            solve({Manifold::Circle, 8.0, 1e6}).d_total -
        1.0;
    CHECK(std::fabs(rel_1000) == doctest::Approx(4.47e-2).epsilon(1e-2));
    CHECK(std::fabs(rel_1e6) < std::fabs(rel_1000) / 50.0);
  }
}

TEST_CASE("n * d approaches a finite limit") {
  const double nd_circle = limit_n_times_d({Manifold::Circle, 8.0, 2.0});
  CHECK(nd_circle ==
        doctest::Approx(0.3431457505076198047932).epsilon(1e-14));
  CHECK(limit_n_times_d({Manifold::TorusFactorial, 16.0, 2.0}) ==
        doctest::Approx(5.372583002030479219173).epsilon(1e-14));
  // The exact n * d at n = 1e6 should sit close to the limit.
  const double nd = 1e6 * solve({Manifold::Circle, 8.0, 1e6}).d_total;
  CHECK(std::fabs(nd / nd_circle - 1.0) <= 1e-3);
  // Joint: 4 tan^2(pi / sqrt(M)) doubles the per-axis circle limit.
  CHECK(limit_n_times_d({Manifold::TorusJoint, 64.0, 2.0}) ==
        doctest::Approx(2.0 * 0.3431457505076198047932).epsilon(1e-13));
}

TEST_CASE("flat-manifold limit of the normalized width and distortion") {
  const auto [s2, d2] = linear_manifold_limit(2.0);
  CHECK(s2 == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(d2 == doctest::Approx(0.125).epsilon(1e-15));
  const auto [s1, d1] = linear_manifold_limit(1.0);
  CHECK(s1 == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(d1 == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  // Large m_eff circle solves approach the flat limit.
  const Solution sol = solve({Manifold::Circle, 4096.0, 2.0});
  CHECK(sol.s / spacing(4096.0) == doctest::Approx(0.25).epsilon(1e-4));
  CHECK_THROWS_AS(linear_manifold_limit(0.5), std::domain_error);
}

TEST_CASE("two/three regime boundary curve") {
  SUBCASE("frozen values") {
    const auto [nc20, ac20] = boundary_two_three(20.0, Manifold::Circle);
    CHECK(nc20 == doctest::Approx(124.4052199064476982619).epsilon(1e-13));
    CHECK(ac20 == doctest::Approx(121.5854203708053257327).epsilon(1e-13));
    const auto [nt40, at40] =
        boundary_two_three(20.0, Manifold::TorusFactorial);
    CHECK(nt40 == doctest::Approx(247.8104398128953965239).epsilon(1e-13));
    CHECK(at40 == doctest::Approx(243.1708407416106514653).epsilon(1e-13));
    const auto [nc8, ac8] = boundary_two_three(8.0, Manifold::Circle);
    CHECK(nc8 == doctest::Approx(22.3844618988814216821).epsilon(1e-13));
    const auto [nt16, at16] =
        boundary_two_three(8.0, Manifold::TorusFactorial);
    CHECK(nt16 == doctest::Approx(43.7689237977628433642).epsilon(1e-13));
    (void)ac8;
    (void)at16;
  }
  SUBCASE("asymptote is within 10 percent of the exact curve at m_eff=20") {
    const auto [ne, na] = boundary_two_three(20.0, Manifold::Circle);
    CHECK(std::fabs(na / ne - 1.0) <= 0.1);
  }
  SUBCASE("at the boundary count the root sits exactly at half spacing") {
    const auto [ne, na] = boundary_two_three(8.0, Manifold::Circle);
    (void)na;
    const double resid = residual_s({Manifold::Circle, 8.0, ne},
                                    spacing(8.0) / 2, Regime::TwoOverlap);
    CHECK(std::fabs(resid) <= 1e-12);
  }
  SUBCASE("floor") {
    CHECK_THROWS_AS(boundary_two_three(3.0, Manifold::Circle),
                    std::domain_error);
  }
}

TEST_CASE("asymptotic joint/factorial crossing") {
  const double M = asymptotic_crossing_M();
  CHECK(M == doctest::Approx(11.73571873961597703256).epsilon(1e-12));
  // It is a root of tan^2(pi/sqrt(M)) = 2 sec^2(2 pi / M) - 1.
  const double lhs = std::tan(kPi / std::sqrt(M));
  const double sec = 1.0 / std::cos(2.0 * kPi / M);
  const double g = lhs * lhs - (2.0 * sec * sec - 1.0);
  CHECK(std::fabs(g) <= 1e-10);
}
