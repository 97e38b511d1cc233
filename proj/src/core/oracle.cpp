#include "core/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "core/quadrature.hpp"
#include "core/solver.hpp"

namespace tvq {

namespace {

// Weights combining the per-circle integrals into the printed bound:
//   d1 = scale1 * <sum_y p_y ||x - x'_y||^2> + extra
//   d2 = scale2 * <||x - mix * mu||^2>,  mu = sum_y p_y x'_y.
struct FamilyScales {
  double scale1, scale2, mix, extra, gamma;
};

FamilyScales family_scales(const ProblemSpec& spec) {
  const double n = spec.n;
  switch (spec.manifold) {
    case Manifold::Circle:
      return {2.0 / n, 2.0 * (n - 1.0) / n, 1.0, 0.0, n - 1.0};
    case Manifold::TorusJoint:
      return {4.0 / n, 4.0 * (n - 1.0) / n, 1.0, 0.0, n - 1.0};
    case Manifold::TorusFactorial:
      return {2.0 / n, 4.0 * (n - 1.0) / n, 0.5, 2.0 / n, (n - 1.0) / 2.0};
  }
  return {};
}

// Integral m_eff with the spec/profile consistency checks shared by the
// tiled-quadrature, stationarity, and Monte Carlo paths.
int checked_unit_count(const PosteriorProfile& profile,
                       const ProblemSpec& spec, const char* what) {
  validate_spec(spec);
  const double mc = effective_count(spec);
  if (std::fabs(mc - profile.m_eff) > 1e-9)
    throw std::domain_error(std::string(what) +
                            ": profile m_eff does not match the spec");
  const double m_round = std::round(profile.m_eff);
  if (std::fabs(profile.m_eff - m_round) > 1e-9)
    throw std::domain_error(std::string(what) +
                            ": integral m_eff required, got m_eff=" +
                            std::to_string(profile.m_eff));
  return static_cast<int>(m_round);
}

// Per-unit preferred directions of the m-unit circle.
struct DirectionTable {
  std::vector<double> c, s;
  explicit DirectionTable(int m, double delta) : c(m), s(m) {
    for (int y = 0; y < m; ++y) {
      c[y] = std::cos(y * delta);
      s[y] = std::sin(y * delta);
    }
  }
};

// Posterior of the nearest unit and its two neighbours at angle t.
struct ActiveSet {
  int idx[3];
  double p[3];
  int count = 0;
};

ActiveSet active_units(const PosteriorProfile& profile, int m, double t) {
  ActiveSet out;
  const int k0 = static_cast<int>(std::floor(t / profile.delta + 0.5));
  for (int k = k0 - 1; k <= k0 + 1; ++k) {
    const double p = posterior_eval(profile, t - k * profile.delta);
    if (p > 0.0) {
      out.idx[out.count] = ((k % m) + m) % m;
      out.p[out.count] = p;
      ++out.count;
    }
  }
  return out;
}

struct IntOut {
  double value = 0.0;
  double err = 0.0;
  int segs = 0;
  bool ok = true;
};

template <typename F>
IntOut integrate_or_best(F&& f, const std::vector<double>& splits, double tol,
                         int max_segments) {
  IntOut out;
  try {
    out.value = integrate_adaptive(f, splits, tol, max_segments, &out.err,
                                   &out.segs);
  } catch (const QuadratureError& ex) {
    out.value = ex.best_estimate;
    out.err = ex.error_estimate;
    out.segs = ex.segments;
    out.ok = false;
  }
  return out;
}

}  // namespace

QuadResult quadrature_objective(const PosteriorProfile& profile, double r,
                                const ProblemSpec& spec, double tol) {
  const int m = checked_unit_count(profile, spec, "quadrature_objective");
  if (!(tol > 0.0))
    throw std::domain_error("quadrature_objective: tol must be positive");
  const FamilyScales fs = family_scales(spec);
  const DirectionTable dirs(m, profile.delta);

  // Split at every image of every profile breakpoint.
  std::vector<double> splits{0.0, kTwoPi};
  for (int y = 0; y < m; ++y)
    for (double b : profile.breakpoints)
      for (double sgn : {1.0, -1.0}) {
        double v = std::fmod(y * profile.delta + sgn * b, kTwoPi);
        if (v < 0.0) v += kTwoPi;
        splits.push_back(v);
      }
  std::sort(splits.begin(), splits.end());

  const auto g1 = [&](double t) {
    const ActiveSet act = active_units(profile, m, t);
    const double cx = std::cos(t), sx = std::sin(t);
    double acc = 0.0;
    for (int i = 0; i < act.count; ++i) {
      const double dx = cx - r * dirs.c[act.idx[i]];
      const double dy = sx - r * dirs.s[act.idx[i]];
      acc += act.p[i] * (dx * dx + dy * dy);
    }
    return acc;
  };
  const auto g2 = [&](double t) {
    const ActiveSet act = active_units(profile, m, t);
    double mx = 0.0, my = 0.0;
    for (int i = 0; i < act.count; ++i) {
      mx += act.p[i] * r * dirs.c[act.idx[i]];
      my += act.p[i] * r * dirs.s[act.idx[i]];
    }
    const double dx = std::cos(t) - fs.mix * mx;
    const double dy = std::sin(t) - fs.mix * my;
    return dx * dx + dy * dy;
  };

  // Divide the d1+d2 error budget between the two integrals, translated
  // back into raw-integral units.
  const bool with_d2 = fs.scale2 != 0.0;
  const double tol1 =
      tol * kTwoPi / fs.scale1 * (with_d2 ? 0.5 : 1.0);
  const IntOut i1 = integrate_or_best(g1, splits, tol1, 8192);
  IntOut i2;
  if (with_d2) {
    const double tol2 = tol * kTwoPi / fs.scale2 * 0.5;
    i2 = integrate_or_best(g2, splits, tol2, 8192);
  }

  QuadResult out;
  out.d1 = fs.scale1 * i1.value / kTwoPi + fs.extra;
  out.d2 = with_d2 ? fs.scale2 * i2.value / kTwoPi : 0.0;
  out.abs_error =
      fs.scale1 * i1.err / kTwoPi + (with_d2 ? fs.scale2 * i2.err / kTwoPi : 0.0);
  out.segments = i1.segs + i2.segs;
  if (!i1.ok || !i2.ok)
    throw QuadratureError(
        "quadrature_objective: tolerance " + std::to_string(tol) +
            " not reachable; best d1+d2 = " + std::to_string(out.d1 + out.d2),
        out.d1 + out.d2, out.abs_error, out.segments);
  return out;
}

QuadResult objective_folded(const ProblemSpec& spec, double s, Regime regime,
                            double r) {
  validate_spec(spec);
  const double mc = effective_count(spec);
  const PosteriorProfile prof = build_profile(mc, s, regime);
  const double x = prof.delta / 2.0;
  const double n = spec.n;

  // One neighbour term of a folded integrand: unit direction angle phi,
  // posterior argument off + sgn * theta.
  struct Term {
    double phi, off, sgn;
  };
  struct Interval {
    double lo, hi;
    std::vector<Term> terms;
  };
  std::vector<Interval> cell;
  if (regime == Regime::TwoOverlap) {
    cell.push_back({0.0, x - s, {{0.0, 0.0, 1.0}}});
    cell.push_back({x - s, x, {{0.0, 0.0, 1.0}, {2.0 * x, 2.0 * x, -1.0}}});
  } else {
    cell.push_back({0.0, s - x,
                    {{0.0, 0.0, 1.0},
                     {2.0 * x, 2.0 * x, -1.0},
                     {-2.0 * x, 2.0 * x, 1.0}}});
    cell.push_back(
        {s - x, 3.0 * x - s, {{0.0, 0.0, 1.0}, {2.0 * x, 2.0 * x, -1.0}}});
    cell.push_back({3.0 * x - s, 2.0 * x,
                    {{0.0, 0.0, 1.0},
                     {2.0 * x, 2.0 * x, -1.0},
                     {4.0 * x, 4.0 * x, -1.0}}});
  }

  // Prefactors for the half-cell (two-overlap) or full-cell (three-overlap)
  // fold; the joint grid doubles both axis contributions at the end.
  const bool factorial = spec.manifold == Manifold::TorusFactorial;
  const double doubling = spec.manifold == Manifold::TorusJoint ? 2.0 : 1.0;
  const double plus1 = factorial ? 1.0 : 0.0;
  const double mean_w = factorial ? 0.5 : 1.0;
  double pref1 = 2.0 * mc / (n * kPi);
  double pref2 = (factorial ? 4.0 : 2.0) * (n - 1.0) * mc / (n * kPi);
  if (regime == Regime::ThreeOverlap) {
    pref1 /= 2.0;
    pref2 /= 2.0;
  }

  double i1 = 0.0, i2 = 0.0, err = 0.0;
  int segs = 0;
  const bool with_d2 = n > 1.0;
  for (const Interval& iv : cell) {
    if (!(iv.hi > iv.lo)) continue;
    const std::vector<double> splits{iv.lo, iv.hi};
    const auto g1 = [&](double t) {
      const double cx = std::cos(t), sx = std::sin(t);
      double acc = 0.0;
      for (const Term& tm : iv.terms) {
        const double p = posterior_eval(prof, tm.off + tm.sgn * t);
        if (p <= 0.0) continue;
        const double dx = cx - r * std::cos(tm.phi);
        const double dy = sx - r * std::sin(tm.phi);
        acc += p * (plus1 + dx * dx + dy * dy);
      }
      return acc;
    };
    double e = 0.0;
    int sg = 0;
    i1 += integrate_adaptive(g1, splits, 1e-14, 256, &e, &sg);
    err += pref1 * e;
    segs += sg;
    if (!with_d2) continue;
    const auto g2 = [&](double t) {
      double mxv = 0.0, myv = 0.0;
      for (const Term& tm : iv.terms) {
        const double p = posterior_eval(prof, tm.off + tm.sgn * t);
        if (p <= 0.0) continue;
        mxv += p * r * std::cos(tm.phi);
        myv += p * r * std::sin(tm.phi);
      }
      const double dx = std::cos(t) - mean_w * mxv;
      const double dy = std::sin(t) - mean_w * myv;
      return dx * dx + dy * dy;
    };
    i2 += integrate_adaptive(g2, splits, 1e-14, 256, &e, &sg);
    err += pref2 * e;
    segs += sg;
  }

  QuadResult out;
  out.d1 = doubling * pref1 * i1;
  out.d2 = with_d2 ? doubling * pref2 * i2 : 0.0;
  out.abs_error = doubling * err;
  out.segments = segs;
  return out;
}

double stationarity_residual_P(const PosteriorProfile& profile, double r,
                               const ProblemSpec& spec, double theta, int y) {
  const int m = checked_unit_count(profile, spec, "stationarity_residual_P");
  const FamilyScales fs = family_scales(spec);
  const DirectionTable dirs(m, profile.delta);
  const int yi = ((y % m) + m) % m;

  if (!(posterior_eval(profile, theta - yi * profile.delta) > 0.0))
    throw std::domain_error(
        "stationarity_residual_P: unit y has zero posterior at theta");

  const ActiveSet act = active_units(profile, m, theta);
  double mux = 0.0, muy = 0.0;
  for (int i = 0; i < act.count; ++i) {
    mux += act.p[i] * r * dirs.c[act.idx[i]];
    muy += act.p[i] * r * dirs.s[act.idx[i]];
  }
  const double cx = std::cos(theta), sx = std::sin(theta);
  double acc = 0.0;
  bool y_in_active = false;
  for (int i = 0; i < act.count; ++i) {
    double coef = act.p[i];
    if (act.idx[i] == yi) {
      coef -= 1.0;
      y_in_active = true;
    }
    if (coef == 0.0) continue;
    const double rx = r * dirs.c[act.idx[i]];
    const double ry = r * dirs.s[act.idx[i]];
    acc += coef * (rx * (rx / 2.0 - spec.n * cx + fs.gamma * mux) +
                   ry * (ry / 2.0 - spec.n * sx + fs.gamma * muy));
  }
  if (!y_in_active) {
    const double rx = r * dirs.c[yi];
    const double ry = r * dirs.s[yi];
    acc -= rx * (rx / 2.0 - spec.n * cx + fs.gamma * mux) +
           ry * (ry / 2.0 - spec.n * sx + fs.gamma * muy);
  }
  return acc;
}

std::array<double, 2> stationarity_residual_X(const PosteriorProfile& profile,
                                              double r,
                                              const ProblemSpec& spec,
                                              double tol) {
  const int m = checked_unit_count(profile, spec, "stationarity_residual_X");
  if (!(tol > 0.0))
    throw std::domain_error("stationarity_residual_X: tol must be positive");
  const FamilyScales fs = family_scales(spec);
  const DirectionTable dirs(m, profile.delta);
  const double h = profile.support_halfwidth();

  std::vector<double> splits{-h, h};
  for (int k = -2; k <= 2; ++k)
    for (double b : profile.breakpoints)
      for (double sgn : {1.0, -1.0}) {
        const double v = k * profile.delta + sgn * b;
        if (v > -h && v < h) splits.push_back(v);
      }
  std::sort(splits.begin(), splits.end());

  const auto mu = [&](double t) {
    const ActiveSet act = active_units(profile, m, t);
    std::array<double, 2> out{0.0, 0.0};
    for (int i = 0; i < act.count; ++i) {
      out[0] += act.p[i] * r * dirs.c[act.idx[i]];
      out[1] += act.p[i] * r * dirs.s[act.idx[i]];
    }
    return out;
  };

  const double c = profile.m_eff / kTwoPi;
  const auto integ = [&](auto&& f) {
    return integrate_adaptive(f, splits, tol, 2048);
  };
  const double lx =
      integ([&](double t) { return posterior_eval(profile, t) * std::cos(t); });
  const double ly =
      integ([&](double t) { return posterior_eval(profile, t) * std::sin(t); });
  const double rx =
      integ([&](double t) { return posterior_eval(profile, t) * mu(t)[0]; });
  const double ry =
      integ([&](double t) { return posterior_eval(profile, t) * mu(t)[1]; });

  return {spec.n * c * lx - (r + fs.gamma * c * rx),
          spec.n * c * ly - fs.gamma * c * ry};
}

MinimizeResult numeric_minimize_s(const ProblemSpec& spec, Regime regime) {
  validate_spec(spec);
  if (!(spec.n > 1.0))
    throw std::domain_error("numeric_minimize_s: n > 1 required");
  const double mc = effective_count(spec);
  const double x = kPi / mc;
  double lo = regime == Regime::TwoOverlap ? 0.0 : x;
  double hi = regime == Regime::TwoOverlap ? x : 2.0 * x;

  const auto obj = [&](double s) {
    const double r = optimal_r(spec, s, regime);
    const QuadResult q = objective_folded(spec, s, regime, r);
    return q.d1 + q.d2;
  };

  const double inv_phi = 0.6180339887498948482;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = obj(c);
  double fd = obj(d);
  while (hi - lo > 1e-10) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = obj(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = obj(d);
    }
  }
  MinimizeResult out;
  out.s = 0.5 * (lo + hi);
  out.d = obj(out.s);
  out.regime = regime;
  return out;
}

McResult mc_estimate(const PosteriorProfile& profile, double r,
                     const ProblemSpec& spec, long long samples,
                     std::uint64_t seed) {
  const int m = checked_unit_count(profile, spec, "mc_estimate");
  if (samples < 100)
    throw std::domain_error("mc_estimate: samples >= 100 required, got " +
                            std::to_string(samples));
  const FamilyScales fs = family_scales(spec);
  const DirectionTable dirs(m, profile.delta);
  const bool with_d2 = fs.scale2 != 0.0;

  constexpr long long kChunk = 65536;
  double s1 = 0.0, s1sq = 0.0, s2 = 0.0, s2sq = 0.0;
  long long done = 0;
  for (std::uint64_t chunk = 0; done < samples; ++chunk) {
    rng::SplitMix64 g = rng::chunk_stream(seed, chunk);
    const long long len = std::min(kChunk, samples - done);
    double c1 = 0.0, c1sq = 0.0, c2 = 0.0, c2sq = 0.0;
    for (long long i = 0; i < len; ++i) {
      const double t = g.next_angle();
      const ActiveSet act = active_units(profile, m, t);
      const double cx = std::cos(t), sx = std::sin(t);
      double q1 = 0.0, mx = 0.0, my = 0.0;
      for (int j = 0; j < act.count; ++j) {
        const double rx = r * dirs.c[act.idx[j]];
        const double ry = r * dirs.s[act.idx[j]];
        const double dx = cx - rx;
        const double dy = sx - ry;
        q1 += act.p[j] * (dx * dx + dy * dy);
        if (with_d2) {
          mx += act.p[j] * rx;
          my += act.p[j] * ry;
        }
      }
      const double t1 = fs.scale1 * q1 + fs.extra;
      c1 += t1;
      c1sq += t1 * t1;
      if (with_d2) {
        const double dx = cx - fs.mix * mx;
        const double dy = sx - fs.mix * my;
        const double t2 = fs.scale2 * (dx * dx + dy * dy);
        c2 += t2;
        c2sq += t2 * t2;
      }
    }
    s1 += c1;
    s1sq += c1sq;
    s2 += c2;
    s2sq += c2sq;
    done += len;
  }

  const double nn = static_cast<double>(samples);
  McResult out;
  out.samples = samples;
  out.seed = seed;
  out.d1_hat = s1 / nn;
  out.d2_hat = with_d2 ? s2 / nn : 0.0;
  const double v1 = std::max(0.0, s1sq - nn * out.d1_hat * out.d1_hat);
  out.d1_se = std::sqrt(v1 / (nn - 1.0) / nn);
  if (with_d2) {
    const double v2 = std::max(0.0, s2sq - nn * out.d2_hat * out.d2_hat);
    out.d2_se = std::sqrt(v2 / (nn - 1.0) / nn);
  }
  return out;
}

}  // namespace tvq
