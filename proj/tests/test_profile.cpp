// Posterior profile construction and evaluation.  All expected numbers were
// produced by an independent high-precision implementation of the same
// closed forms and are frozen here to their printed precision.

#include <cmath>
#include <vector>

#include "doctest.h"

#include "core/profile.hpp"
#include "core/solver.hpp"
#include "core/types.hpp"

using namespace tvq;

namespace {
constexpr double kX8 = kPi / 8.0;

PosteriorProfile circle8_profile(double n) {
  const auto [s, regime] = solve_s({Manifold::Circle, 8.0, n});
  return build_profile(8.0, s, regime);
}
}  // namespace

TEST_CASE("transition piece passes through one half at the unit midpoint") {
  // Two-overlap: f(x) = 1/2 exactly, independent of s.
  for (double s : {0.05, 0.1909905013369979, 0.3}) {
    PosteriorProfile prof = build_profile(8.0, s, Regime::TwoOverlap);
    CHECK(posterior_eval(prof, kX8) == doctest::Approx(0.5).epsilon(1e-14));
  }
  // Three-overlap: the middle piece also passes through 1/2 at x.
  PosteriorProfile prof3 =
      build_profile(8.0, 1.39 * kX8, Regime::ThreeOverlap);
  CHECK(posterior_eval(prof3, kX8) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("zero overlap degenerates to the hard indicator") {
  PosteriorProfile prof = build_profile(8.0, 0.0, Regime::TwoOverlap);
  REQUIRE(prof.pieces.size() == 1);
  CHECK(prof.pieces[0].a == 1.0);
  CHECK(prof.pieces[0].b == 0.0);
  CHECK(prof.pieces[0].c == 0.0);
  CHECK(posterior_eval(prof, 0.3) == 1.0);
  CHECK(posterior_eval(prof, kX8 + 1e-9) == 0.0);
}

TEST_CASE("support edge is sharp") {
  const double s = 0.1909905013369979458;
  PosteriorProfile prof = build_profile(8.0, s, Regime::TwoOverlap);
  CHECK(posterior_eval(prof, prof.support_halfwidth() + 1e-12) == 0.0);
  CHECK(posterior_eval(prof, prof.support_halfwidth() - 1e-9) > 0.0);
  // The profile vanishes continuously at the edge.
  CHECK(std::fabs(posterior_eval(prof, prof.support_halfwidth() - 1e-10)) <
        1e-9);
}

TEST_CASE("profiles normalize, stay in [0, 1], and are even") {
  struct Case {
    double m_eff, s;
    Regime regime;
  };
  const std::vector<Case> cases = {
      {8.0, 0.1909905013369979458671, Regime::TwoOverlap},
      {8.0, 0.5465641481420281707881, Regime::ThreeOverlap},
      {8.0, 1.39 * kX8, Regime::ThreeOverlap},
      {4.0, 0.3, Regime::TwoOverlap},
      {16.0, 0.05, Regime::TwoOverlap},
  };
  for (const Case& c : cases) {
    PosteriorProfile prof = build_profile(c.m_eff, c.s, c.regime);
    const double delta = spacing(c.m_eff);
    const int m = static_cast<int>(c.m_eff);
    for (int i = 0; i < 1000; ++i) {
      const double theta = -kPi + kTwoPi * (i + 0.5) / 1000.0;
      double total = 0.0;
      for (int k = 0; k < m; ++k) {
        const double p = posterior_eval(prof, theta - k * delta);
        CHECK(p >= 0.0);
        CHECK(p <= 1.0 + 1e-14);
        total += p;
      }
      CHECK(std::fabs(total - 1.0) <= 1e-12);
      CHECK(posterior_eval(prof, theta) ==
            doctest::Approx(posterior_eval(prof, -theta)).epsilon(1e-14));
    }
  }
}

TEST_CASE("adjacent pieces meet continuously at breakpoints") {
  for (double s : {0.5465641481420281707881, 1.39 * kX8}) {
    PosteriorProfile prof = build_profile(8.0, s, Regime::ThreeOverlap);
    REQUIRE(prof.pieces.size() >= 2);
    for (std::size_t i = 0; i + 1 < prof.pieces.size(); ++i) {
      const double b = prof.pieces[i].hi;
      CHECK(prof.pieces[i + 1].lo == doctest::Approx(b).epsilon(1e-14));
      CHECK(prof.pieces[i].eval(b) ==
            doctest::Approx(prof.pieces[i + 1].eval(b)).epsilon(1e-12));
    }
  }
}

TEST_CASE("piece gradients point along the expected directions") {
  const double s = 1.39 * kX8;
  PosteriorProfile prof = build_profile(8.0, s, Regime::ThreeOverlap);
  REQUIRE(prof.pieces.size() == 3);
  const Piece& f1 = prof.pieces[0];
  const Piece& f2 = prof.pieces[1];
  const Piece& f3 = prof.pieces[2];
  // Central piece: gradient along the radial direction (c == 0).
  CHECK(std::fabs(f1.c) < 1e-15);
  // Transition piece: (b, c) proportional to (sin x, -cos x).
  CHECK(f2.b * (-std::cos(kX8)) - f2.c * std::sin(kX8) ==
        doctest::Approx(0.0).epsilon(1e-14));
  // Far piece: (b, c) proportional to (cos 3x, sin 3x).
  CHECK(f3.b * std::sin(3 * kX8) - f3.c * std::cos(3 * kX8) ==
        doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("frozen profile values: circle m_eff=8") {
  SUBCASE("n = 2 (two-overlap optimum)") {
    PosteriorProfile prof = circle8_profile(2.0);
    CHECK(posterior_eval(prof, 0.25) ==
          doctest::Approx(0.874582966881664620603).epsilon(1e-13));
    CHECK(posterior_eval(prof, 0.35) ==
          doctest::Approx(0.6124315847613839962819).epsilon(1e-13));
    CHECK(posterior_eval(prof, 0.45) ==
          doctest::Approx(0.3491568234111083492998).epsilon(1e-13));
  }
  SUBCASE("s = 1.39 x (three-overlap)") {
    PosteriorProfile prof = build_profile(8.0, 1.39 * kX8,
                                          Regime::ThreeOverlap);
    const double delta = spacing(8.0);
    CHECK(posterior_eval(prof, 0.1) ==
          doctest::Approx(0.8166037639580360340121).epsilon(1e-13));
    CHECK(posterior_eval(prof, 0.1 - delta) ==
          doctest::Approx(0.1588344729105602271273).epsilon(1e-13));
    CHECK(posterior_eval(prof, 0.1 + delta) ==
          doctest::Approx(0.0245617631314037388607).epsilon(1e-13));
    CHECK(posterior_eval(prof, 0.2) ==
          doctest::Approx(0.7379664346855390960277).epsilon(1e-13));
    CHECK(posterior_eval(prof, 0.35) ==
          doctest::Approx(0.5530412467358400117201).epsilon(1e-13));
    CHECK(posterior_eval(prof, 0.5) ==
          doctest::Approx(0.3669248667345971295204).epsilon(1e-13));
    CHECK(posterior_eval(prof, 0.7) ==
          doctest::Approx(0.1468628281970990057802).epsilon(1e-13));
  }
  SUBCASE("factorial torus M=16 reuses the per-circle profile") {
    const auto [s2, reg2] = solve_s({Manifold::TorusFactorial, 16.0, 2.0});
    PosteriorProfile prof = build_profile(8.0, s2, reg2);
    CHECK(posterior_eval(prof, 0.1) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(posterior_eval(prof, 0.3) ==
          doctest::Approx(0.8694243803926801062614).epsilon(1e-13));
    CHECK(posterior_eval(prof, 0.45) ==
          doctest::Approx(0.2714421265779961005362).epsilon(1e-13));

    const auto [s100, reg100] =
        solve_s({Manifold::TorusFactorial, 16.0, 100.0});
    PosteriorProfile prof100 = build_profile(8.0, s100, reg100);
    CHECK(posterior_eval(prof100, 0.1) ==
          doctest::Approx(0.8645297314438529401743).epsilon(1e-13));
    CHECK(posterior_eval(prof100, 0.4) ==
          doctest::Approx(0.4907763198858073183426).epsilon(1e-13));
    CHECK(posterior_eval(prof100, 0.8) ==
          doctest::Approx(0.04662676319901737845083).epsilon(1e-13));
  }
}

TEST_CASE("posterior_all enumerates the active units") {
  PosteriorProfile prof = build_profile(8.0, 1.39 * kX8,
                                        Regime::ThreeOverlap);
  SUBCASE("theta = 0.1: three active units summing to one") {
    const auto units = posterior_all(prof, 0.1);
    REQUIRE(units.size() == 3);
    double total = 0.0;
    for (const auto& u : units) total += u.p;
    CHECK(std::fabs(total - 1.0) <= 1e-13);
    // Sorted by unit index ascending: y = 0, 1, 7 (wrap of -1).
    CHECK(units[0].y == 0);
    CHECK(units[1].y == 1);
    CHECK(units[2].y == 7);
    CHECK(units[0].p ==
          doctest::Approx(0.8166037639580360340121).epsilon(1e-13));
  }
  SUBCASE("theta = 0.2: unit -1 has dropped out") {
    const auto units = posterior_all(prof, 0.2);
    REQUIRE(units.size() == 2);
    CHECK(units[0].y == 0);
    CHECK(units[1].y == 1);
    CHECK(units[0].p ==
          doctest::Approx(0.7379664346855390960277).epsilon(1e-13));
    CHECK(units[1].p ==
          doctest::Approx(0.2620335653144609039723).epsilon(1e-13));
  }
  SUBCASE("theta = 0 concentrates when s is small") {
    PosteriorProfile narrow = build_profile(8.0, 0.1, Regime::TwoOverlap);
    const auto units = posterior_all(narrow, 0.0);
    REQUIRE(units.size() == 1);
    CHECK(units[0].y == 0);
    CHECK(units[0].p == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("theta at the midpoint splits evenly") {
    PosteriorProfile two =
        build_profile(8.0, 0.1909905013369979458671, Regime::TwoOverlap);
    const auto units = posterior_all(two, kX8);
    REQUIRE(units.size() == 2);
    CHECK(units[0].y == 0);
    CHECK(units[1].y == 1);
    CHECK(units[0].p == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(units[1].p == doctest::Approx(0.5).epsilon(1e-13));
  }
  SUBCASE("wrap-around near -pi") {
    const auto units = posterior_all(prof, -kPi + 0.01);
    double total = 0.0;
    for (const auto& u : units) {
      CHECK(u.y >= 0);
      CHECK(u.y < 8);
      total += u.p;
    }
    CHECK(std::fabs(total - 1.0) <= 1e-13);
  }
}

TEST_CASE("posterior evaluation is 2*pi periodic") {
  PosteriorProfile prof = circle8_profile(2.0);
  for (double theta : {0.0, 0.2, 0.45, -0.3, 1.0}) {
    CHECK(posterior_eval(prof, theta + kTwoPi) ==
          doctest::Approx(posterior_eval(prof, theta)).epsilon(1e-13));
    CHECK(posterior_eval(prof, theta - kTwoPi) ==
          doctest::Approx(posterior_eval(prof, theta)).epsilon(1e-13));
  }
}

TEST_CASE("reference vectors sit on the unit grid directions") {
  const auto v = reference_vector(1.0, 8.0, 2);
  CHECK(v[0] == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(v[1] == doctest::Approx(1.0).epsilon(1e-15));
  const auto w = reference_vector(2.0, 8.0, 0);
  CHECK(w[0] == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(w[1] == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("profile construction rejects bad arguments") {
  CHECK_THROWS_AS(build_profile(0.0, 0.1, Regime::TwoOverlap),
                  std::domain_error);
  // Two-overlap widths live in [0, x]; three-overlap in (x, 2x].
  CHECK_THROWS_AS(build_profile(8.0, 0.5, Regime::TwoOverlap),
                  std::domain_error);
  CHECK_THROWS_AS(build_profile(8.0, 0.1, Regime::ThreeOverlap),
                  std::domain_error);
  CHECK_THROWS_AS(build_profile(8.0, -0.1, Regime::TwoOverlap),
                  std::domain_error);
  // posterior_all needs an integral unit count.
  PosteriorProfile frac = build_profile(8.5, 0.1, Regime::TwoOverlap);
  CHECK_THROWS_AS(posterior_all(frac, 0.1), std::domain_error);
}
