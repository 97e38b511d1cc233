/* torusvq: analytically optimal soft vector-quantizer encodings of the
 * circle and the 2-torus, with independent numeric verification.
 *
 * Plain-C interface over the C++ core: opaque handles, status codes, POD
 * result structs.  Every function returns a tvq_status; on any status other
 * than TVQ_OK the output parameters are untouched and tvq_last_error()
 * returns a thread-local description of the failure.
 */
#ifndef TORUSVQ_H
#define TORUSVQ_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define TVQ_API __attribute__((visibility("default")))

typedef enum tvq_status {
  TVQ_OK = 0,
  TVQ_ERR_DOMAIN = 1,     /* parameter outside the documented domain */
  TVQ_ERR_SOLVER = 2,     /* root solve failed to converge */
  TVQ_ERR_QUADRATURE = 3, /* integration tolerance not reachable */
  TVQ_ERR_INVALID_ARG = 4 /* null pointer / malformed enum value */
} tvq_status;

typedef enum tvq_manifold {
  TVQ_MANIFOLD_CIRCLE = 0,
  TVQ_MANIFOLD_TORUS_JOINT = 1,
  TVQ_MANIFOLD_TORUS_FACTORIAL = 2
} tvq_manifold;

typedef enum tvq_regime {
  TVQ_REGIME_TWO_OVERLAP = 0,
  TVQ_REGIME_THREE_OVERLAP = 1
} tvq_regime;

/* Complete analytic solution at (manifold, M, n). */
typedef struct tvq_solution {
  double s;            /* overlap half-width */
  double s_normalized; /* s / (pi / m_eff) */
  double r;            /* preferred-vector length */
  double d1;           /* quantization part of the bound */
  double d2;           /* variance part of the bound */
  double d_total;      /* closed-form total */
  double m_eff;        /* units per circle */
  int regime;          /* tvq_regime */
} tvq_solution;

typedef struct tvq_quad_result {
  double d1;
  double d2;
  double abs_error; /* summed panel-error estimate */
  int segments;
} tvq_quad_result;

typedef struct tvq_mc_result {
  double d1_hat;
  double d1_se;
  double d2_hat;
  double d2_se;
  long long samples;
  uint64_t seed;
} tvq_mc_result;

typedef struct tvq_minimize_result {
  double s;
  double d;
  int regime;
} tvq_minimize_result;

typedef struct tvq_comparison {
  double d_joint;
  double d_factorial;
  double rel_gap; /* (d_factorial - d_joint) / d_factorial */
  int winner;     /* tvq_manifold: joint or factorial */
} tvq_comparison;

typedef struct tvq_series_point {
  double s;
  double r;
  double d;
} tvq_series_point;

/* Opaque posterior profile of one unit on its circle. */
typedef struct tvq_profile tvq_profile;

/* ------------------------------------------------------------------ misc */

TVQ_API const char* tvq_version(void);

/* Thread-local message describing the most recent failure on this thread;
 * empty string if none. */
TVQ_API const char* tvq_last_error(void);

/* ---------------------------------------------------------------- solver */

TVQ_API tvq_status tvq_solve(int manifold, double M, double n,
                             tvq_solution* out);

/* Residual of the width equation in the given regime's closed form. */
TVQ_API tvq_status tvq_residual_s(int manifold, double M, double n, double s,
                                  int regime, double* out);

/* Root of the width equation plus the dispatched regime. */
TVQ_API tvq_status tvq_solve_s(int manifold, double M, double n, double* s_out,
                               int* regime_out);

TVQ_API tvq_status tvq_optimal_r(int manifold, double M, double n, double s,
                                 int regime, double* out);

TVQ_API tvq_status tvq_objective_closed_form(int manifold, double M, double n,
                                             double s, int regime,
                                             double* out);

/* --------------------------------------------------------------- profile */

/* Builds the posterior profile of a circle of m_eff units at overlap
 * half-width s.  The handle must be released with tvq_profile_free. */
TVQ_API tvq_status tvq_profile_build(double m_eff, double s, int regime,
                                     tvq_profile** out);

TVQ_API void tvq_profile_free(tvq_profile* profile);

TVQ_API tvq_status tvq_profile_eval(const tvq_profile* profile, double theta,
                                    double* out);

/* All units with positive posterior at theta: indices into ys[], values
 * into ps[] (capacity cap each), count written to n_out.  Requires
 * integral m_eff. */
TVQ_API tvq_status tvq_profile_all(const tvq_profile* profile, double theta,
                                   int* ys, double* ps, int cap, int* n_out);

TVQ_API tvq_status tvq_profile_info(const tvq_profile* profile, double* m_eff,
                                    double* s, double* delta, int* regime);

/* Preferred vector of unit y: out2 = r * (cos(y*delta), sin(y*delta)). */
TVQ_API tvq_status tvq_reference_vector(double r, double m_eff, int y,
                                        double out2[2]);

/* ---------------------------------------------------- numeric verification */

/* Full-period tiled quadrature of the two distortion terms. */
TVQ_API tvq_status tvq_quadrature(int manifold, double M, double n, double s,
                                  int regime, double r, double tol,
                                  tvq_quad_result* out);

/* Single-cell folded form of the same integrals. */
TVQ_API tvq_status tvq_quadrature_folded(int manifold, double M, double n,
                                         double s, int regime, double r,
                                         tvq_quad_result* out);

TVQ_API tvq_status tvq_stationarity_p(int manifold, double M, double n,
                                      double s, int regime, double r,
                                      double theta, int y, double* out);

TVQ_API tvq_status tvq_stationarity_x(int manifold, double M, double n,
                                      double s, int regime, double r,
                                      double tol, double out2[2]);

/* Golden-section minimization of the quadrature objective over s. */
TVQ_API tvq_status tvq_numeric_minimize_s(int manifold, double M, double n,
                                          int regime,
                                          tvq_minimize_result* out);

/* Seeded, chunked Monte Carlo estimate (bit-reproducible per seed). */
TVQ_API tvq_status tvq_mc_estimate(int manifold, double M, double n, double s,
                                   int regime, double r, long long samples,
                                   uint64_t seed, tvq_mc_result* out);

/* ----------------------------------------------------------- asymptotics */

TVQ_API tvq_status tvq_expand_large_m(int manifold, double M, double n,
                                      tvq_series_point* out);

TVQ_API tvq_status tvq_limit_n1(int manifold, double M, tvq_series_point* out);

TVQ_API tvq_status tvq_expand_large_n(int manifold, double M, double n,
                                      tvq_series_point* out);

TVQ_API tvq_status tvq_limit_n_times_d(int manifold, double M, double* out);

TVQ_API tvq_status tvq_linear_manifold_limit(double n, double* s_out,
                                             double* d_out);

/* Regime-boundary n for a circle of m_eff units (circle/joint) or the
 * factorial torus with m_eff units per ring, plus its large-m_eff
 * asymptote. */
TVQ_API tvq_status tvq_boundary_two_three(double m_eff, int manifold,
                                          double* n_exact,
                                          double* n_asymptote);

TVQ_API tvq_status tvq_asymptotic_crossing_m(double* out);

/* ------------------------------------------------------------ comparator */

TVQ_API tvq_status tvq_compare(double M, double n, tvq_comparison* out);

/* Tie point of the two codes in [8, 64] at this n; *found is 0 and *M_out
 * untouched when no tie exists (e.g. n = 1). */
TVQ_API tvq_status tvq_winner_boundary(double n, double* M_out, int* found);

/* ------------------------------------------------------------- activation */

TVQ_API tvq_status tvq_activation_threshold(double s, double M, double* out);

TVQ_API tvq_status tvq_activation_eval(int y, double theta, double s, double M,
                                       double* out);

TVQ_API tvq_status tvq_approx_posterior(double theta, double s, double M,
                                        double* out);

TVQ_API tvq_status tvq_approx_error(double s, double M, double* sup_error,
                                    double* argmax, double* exact_cubic,
                                    double* approx_cubic);

TVQ_API tvq_status tvq_fitted_transition_exponent(double s, double M,
                                                  double* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* TORUSVQ_H */
