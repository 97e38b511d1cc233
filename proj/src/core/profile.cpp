#include "core/profile.hpp"

#include <algorithm>
#include <cmath>

namespace tvq {

namespace {

// Reduce an angle to (-pi, pi].
double reduce_angle(double theta) {
  double t = std::remainder(theta, kTwoPi);
  if (t <= -kPi) t += kTwoPi;
  return t;
}

void check_bounds(double m_eff, double s, Regime regime, double half) {
  if (!(m_eff > 0.0) || !std::isfinite(m_eff))
    throw std::domain_error("build_profile: m_eff must be positive");
  if (regime == Regime::TwoOverlap) {
    if (!(s >= 0.0 && s <= half))
      throw std::domain_error(
          "build_profile: two-overlap requires s in [0, delta/2] = [0, " +
          std::to_string(half) + "], got s=" + std::to_string(s));
  } else {
    if (!(s >= half && s <= 2.0 * half))
      throw std::domain_error(
          "build_profile: three-overlap requires s in [delta/2, delta] = [" +
          std::to_string(half) + ", " + std::to_string(2.0 * half) +
          "], got s=" + std::to_string(s));
  }
}

void push_piece(std::vector<Piece>& pieces, double lo, double hi, double a,
                double b, double c) {
  if (hi > lo) pieces.push_back(Piece{lo, hi, a, b, c});
}

}  // namespace

PosteriorProfile build_profile(double m_eff, double s, Regime regime) {
  const double delta = spacing(m_eff);
  const double x = delta / 2.0;  // half spacing
  check_bounds(m_eff, s, regime, x);

  PosteriorProfile prof;
  prof.m_eff = m_eff;
  prof.s = s;
  prof.regime = regime;
  prof.delta = delta;

  if (regime == Regime::TwoOverlap) {
    if (s == 0.0) {
      // Hard assignment: indicator of the nearest-unit cell.
      push_piece(prof.pieces, 0.0, x, 1.0, 0.0, 0.0);
    } else {
      // Plateau, then the transition ramp shared with one neighbour.
      const double inv2s = 1.0 / (2.0 * std::sin(s));
      push_piece(prof.pieces, 0.0, x - s, 1.0, 0.0, 0.0);
      push_piece(prof.pieces, x - s, x + s, 0.5, std::sin(x) * inv2s,
                 -std::cos(x) * inv2s);
    }
  } else {
    // Three-way overlap: inner cap f1, middle ramp f2, outer tail f3.
    const double q = 2.0 * x - s;
    const double sec_q = 1.0 / std::cos(q);
    const double csc2 = 1.0 / (std::sin(x) * std::sin(x));
    const double a1 = -0.25 * (std::cos(4.0 * x - s) + std::cos(s)) * csc2 * sec_q;
    const double b1 = 0.5 * std::cos(x) * csc2 * sec_q;
    const double b2 = 0.5 * std::cos(x) * sec_q;
    const double c2 = -0.5 * (std::cos(x) * std::cos(x) / std::sin(x)) * sec_q;
    const double a3 = 0.25 * csc2;
    const double b3 = -0.25 * csc2 * sec_q * std::cos(3.0 * x);
    const double c3 = -0.25 * csc2 * sec_q * std::sin(3.0 * x);
    push_piece(prof.pieces, 0.0, s - x, a1, b1, 0.0);
    push_piece(prof.pieces, s - x, 3.0 * x - s, 0.5, b2, c2);
    push_piece(prof.pieces, 3.0 * x - s, x + s, a3, b3, c3);
  }

  prof.breakpoints.reserve(prof.pieces.size());
  for (const Piece& p : prof.pieces) prof.breakpoints.push_back(p.hi);
  return prof;
}

double posterior_eval(const PosteriorProfile& profile, double theta) {
  const double t = std::fabs(reduce_angle(theta));
  for (const Piece& p : profile.pieces) {
    if (t <= p.hi) return p.eval(t);
  }
  return 0.0;
}

std::vector<ActiveUnit> posterior_all(const PosteriorProfile& profile,
                                      double theta) {
  const double m_round = std::round(profile.m_eff);
  if (std::fabs(profile.m_eff - m_round) > 1e-9 || m_round < 1.0)
    throw std::domain_error(
        "posterior_all: integral m_eff required, got m_eff=" +
        std::to_string(profile.m_eff));
  const int m = static_cast<int>(m_round);

  // Only the nearest unit and its two neighbours can be active: the support
  // half-width delta/2 + s is at most 3*delta/2.
  const int k0 = static_cast<int>(std::floor(theta / profile.delta + 0.5));
  std::vector<ActiveUnit> out;
  for (int k = k0 - 1; k <= k0 + 1; ++k) {
    const double p = posterior_eval(profile, theta - k * profile.delta);
    if (p > 0.0) {
      const int y = ((k % m) + m) % m;
      out.push_back(ActiveUnit{y, p});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const ActiveUnit& a, const ActiveUnit& b) { return a.y < b.y; });
  return out;
}

std::array<double, 2> reference_vector(double r, double m_eff, int y) {
  if (!(m_eff > 0.0))
    throw std::domain_error("reference_vector: m_eff must be positive");
  const double phi = static_cast<double>(y) * spacing(m_eff);
  return {r * std::cos(phi), r * std::sin(phi)};
}

}  // namespace tvq
