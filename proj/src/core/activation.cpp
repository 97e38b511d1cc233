#include "core/activation.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "core/profile.hpp"

namespace tvq {

namespace {

int checked_M(double M) {
  const double r = std::round(M);
  if (!(M >= 4.0) || std::fabs(M - r) > 1e-9)
    throw std::domain_error(
        "activation: integral M >= 4 required, got M=" + std::to_string(M));
  return static_cast<int>(r);
}

void check_s(double s, double M) {
  if (!(s > 0.0 && s <= kPi / M))
    throw std::domain_error(
        "activation: s in (0, pi/M] required (two-overlap widths), got s=" +
        std::to_string(s));
}

double hinge(double theta, double a) {
  const double v = std::cos(theta) - a;
  return v > 0.0 ? v : 0.0;
}

}  // namespace

double activation_threshold(double s, double M) {
  checked_M(M);
  check_s(s, M);
  const double x = kPi / M;
  return std::cos(x) - std::sin(x) * std::sin(s);
}

double activation_eval(int y, double theta, double s, double M) {
  const int m = checked_M(M);
  check_s(s, M);
  const double a = std::cos(kPi / M) - std::sin(kPi / M) * std::sin(s);
  const double delta = kTwoPi / m;
  return hinge(theta - y * delta, a);
}

double approx_posterior(double theta, double s, double M) {
  const int m = checked_M(M);
  check_s(s, M);
  const double a = std::cos(kPi / M) - std::sin(kPi / M) * std::sin(s);
  const double delta = kTwoPi / m;
  double total = 0.0;
  double q0 = 0.0;
  for (int y = 0; y < m; ++y) {
    const double q = hinge(theta - y * delta, a);
    if (y == 0) q0 = q;
    total += q;
  }
  // a < cos(pi/M), so the nearest unit always fires: total > 0.
  return q0 / total;
}

ApproxError approx_error(double s, double M) {
  checked_M(M);
  check_s(s, M);
  const double x = kPi / M;
  const PosteriorProfile prof = build_profile(M, s, Regime::TwoOverlap);

  const auto err = [&](double t) {
    return std::fabs(posterior_eval(prof, t) - approx_posterior(t, s, M));
  };

  // Dense scan over the transition, then golden-section refinement around
  // the best sample.
  const int kGrid = 10001;
  const double lo0 = x - s;
  const double hi0 = x + s;
  const double h = (hi0 - lo0) / (kGrid - 1);
  double best = -1.0;
  int best_i = 0;
  for (int i = 0; i < kGrid; ++i) {
    const double e = err(lo0 + i * h);
    if (e > best) {
      best = e;
      best_i = i;
    }
  }
  double lo = lo0 + std::max(0, best_i - 2) * h;
  double hi = lo0 + std::min(kGrid - 1, best_i + 2) * h;
  const double inv_phi = 0.6180339887498948482;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = err(c), fd = err(d);
  for (int i = 0; i < 120 && hi - lo > 1e-14; ++i) {
    if (fc > fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = err(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = err(d);
    }
  }
  const double t_ref = 0.5 * (lo + hi);
  const double e_ref = err(t_ref);

  ApproxError out;
  if (e_ref > best) {
    out.sup_error = e_ref;
    out.argmax = t_ref;
  } else {
    out.sup_error = best;
    out.argmax = lo0 + best_i * h;
  }
  out.exact_cubic = 1.0 / (12.0 * std::sin(s));
  out.approx_cubic =
      (1.0 / std::sin(s) - 3.0 / (std::tan(x) * std::sin(s) * std::sin(s))) /
      12.0;
  return out;
}

double fitted_transition_exponent(double s, double M) {
  checked_M(M);
  check_s(s, M);
  const double x = kPi / M;
  const PosteriorProfile prof = build_profile(M, s, Regime::TwoOverlap);
  const auto err = [&](double t) {
    return std::fabs(posterior_eval(prof, t) - approx_posterior(t, s, M));
  };

  const int kPts = 25;
  const double lo = s / 100.0;
  const double ratio = 50.0;  // up to s/2
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (int j = 0; j < kPts; ++j) {
    const double hh = lo * std::pow(ratio, static_cast<double>(j) / (kPts - 1));
    const double e = std::max(err(x + hh), err(x - hh));
    const double lx = std::log(hh);
    const double ly = std::log(e);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (kPts * sxy - sx * sy) / (kPts * sxx - sx * sx);
}

}  // namespace tvq
