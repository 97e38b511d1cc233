#pragma once

#include <array>
#include <cstdint>

#include "core/profile.hpp"
#include "core/types.hpp"

namespace tvq {

// Independent numeric checks of the closed-form solution: direct quadrature
// of the distortion bound, stationarity residuals of the underlying
// variational conditions, derivative-free minimization over s, and a seeded
// Monte Carlo estimator.  Everything here avoids the closed-form D
// expressions on purpose.

struct QuadResult {
  double d1 = 0.0;
  double d2 = 0.0;
  double abs_error = 0.0;  // summed panel-error estimate, in d1+d2 units
  int segments = 0;
};

// Full-period quadrature of the two distortion terms against the tiled
// posterior (every unit on the circle).  Requires the profile's m_eff to be
// integral; tol bounds the summed error estimate of d1 + d2.  Throws
// QuadratureError (carrying the best estimate) if tol cannot be met.
QuadResult quadrature_objective(const PosteriorProfile& profile, double r,
                                const ProblemSpec& spec, double tol = 1e-11);

// Single-cell folded form of the same two integrals (symmetry-reduced to
// one half/full spacing with explicit neighbour terms).  Valid for any real
// m_eff >= 4, so this is what solve() uses for the d1/d2 split.
QuadResult objective_folded(const ProblemSpec& spec, double s, Regime regime,
                            double r);

// Stationarity residual of the posterior-variation condition at stimulus
// angle theta for unit y.  Zero (to quadrature/rounding noise) along the
// family (profile(s), optimal_r(s)) for every s; detects a perturbed s only
// when r is held at the unperturbed optimum.  Requires p_y(theta) > 0.
double stationarity_residual_P(const PosteriorProfile& profile, double r,
                               const ProblemSpec& spec, double theta, int y);

// Stationarity residual of the preferred-vector variation condition for
// unit 0, as a 2-vector (both components ~0 at the solution).
std::array<double, 2> stationarity_residual_X(const PosteriorProfile& profile,
                                              double r,
                                              const ProblemSpec& spec,
                                              double tol = 1e-12);

struct MinimizeResult {
  double s = 0.0;
  double d = 0.0;
  Regime regime = Regime::TwoOverlap;
};

// Golden-section minimization of the folded quadrature objective over the
// regime's s-interval, refreshing r = optimal_r(s) at every trial point.
// Final bracket width 1e-10.
MinimizeResult numeric_minimize_s(const ProblemSpec& spec, Regime regime);

struct McResult {
  double d1_hat = 0.0;
  double d1_se = 0.0;
  double d2_hat = 0.0;
  double d2_se = 0.0;
  long long samples = 0;
  std::uint64_t seed = 0;
};

// Seeded Monte Carlo estimate of (d1, d2) with standard errors.  Stimuli
// are sampled uniformly on the circle from a SplitMix64 stream in fixed
// 65536-sample chunks, so results are bit-identical for identical
// (samples, seed) regardless of chunking or platform order.  Requires
// samples >= 100 and integral m_eff.
McResult mc_estimate(const PosteriorProfile& profile, double r,
                     const ProblemSpec& spec, long long samples,
                     std::uint64_t seed);

namespace rng {

// SplitMix64: tiny, well-mixed, and trivially seedable per chunk.
struct SplitMix64 {
  std::uint64_t state = 0;
  std::uint64_t next() {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  // Uniform angle in [0, 2*pi) from the top 53 bits.
  double next_angle() {
    return static_cast<double>(next() >> 11) * (kTwoPi * 0x1p-53);
  }
};

// Stream for one chunk of the Monte Carlo sampler.  The raw
// seed-xor-gamma states of consecutive chunks sit one step apart on the
// shared +gamma lattice, which leaves their outputs visibly correlated
// (inflated estimator variance); one pass through the output mixer hashes
// every (seed, chunk) pair to a well-separated starting point.
inline SplitMix64 chunk_stream(std::uint64_t seed, std::uint64_t chunk) {
  SplitMix64 hasher{seed ^ (0x9E3779B97F4A7C15ULL * (chunk + 1))};
  return SplitMix64{hasher.next()};
}

}  // namespace rng

}  // namespace tvq
