#pragma once

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include "core/types.hpp"

namespace tvq {

// Gauss-Kronrod 7-15 adaptive quadrature.  Integrands here are piecewise
// trigonometric; callers pre-split at the known breakpoints so each initial
// segment is smooth, and the adaptive loop only mops up.

namespace gk {

inline constexpr double kNodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0};

inline constexpr double kWeightsK[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

// Gauss-7 weights for the odd-indexed Kronrod nodes (plus the midpoint).
inline constexpr double kWeightsG[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

// One G7/K15 panel on [a, b]: returns {K15 value, |K15 - G7|}.
template <typename F>
inline std::pair<double, double> panel(F&& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double k = kWeightsK[7] * fc;
  double g = kWeightsG[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double v = f(c - h * kNodes[i]) + f(c + h * kNodes[i]);
    k += kWeightsK[i] * v;
    if (i % 2 == 1) g += kWeightsG[i / 2] * v;
  }
  return {k * h, std::fabs((k - g) * h)};
}

}  // namespace gk

struct QuadSegment {
  double a, b, value, error;
  bool operator<(const QuadSegment& other) const { return error < other.error; }
};

// Integrates f over the union of [splits[i], splits[i+1]], refining the
// segment with the largest error estimate until the summed estimate drops
// to tol.  Throws QuadratureError (carrying the best estimate) if
// max_segments panels are not enough.
template <typename F>
inline double integrate_adaptive(F&& f, const std::vector<double>& splits,
                                 double tol, int max_segments = 4096,
                                 double* err_out = nullptr,
                                 int* segs_out = nullptr) {
  std::priority_queue<QuadSegment> heap;
  double total = 0.0;
  double total_err = 0.0;
  int count = 0;
  for (size_t i = 0; i + 1 < splits.size(); ++i) {
    const double a = splits[i];
    const double b = splits[i + 1];
    if (!(b > a)) continue;
    const auto [v, e] = gk::panel(f, a, b);
    heap.push(QuadSegment{a, b, v, e});
    total += v;
    total_err += e;
    ++count;
  }
  while (total_err > tol && !heap.empty()) {
    QuadSegment worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (count >= max_segments || mid <= worst.a || mid >= worst.b) break;
    heap.pop();
    total_err -= worst.error;
    const auto [v1, e1] = gk::panel(f, worst.a, mid);
    const auto [v2, e2] = gk::panel(f, mid, worst.b);
    heap.push(QuadSegment{worst.a, mid, v1, e1});
    heap.push(QuadSegment{mid, worst.b, v2, e2});
    total_err += e1 + e2;
    ++count;
  }
  // Deterministic left-to-right resummation of the final partition.
  std::vector<QuadSegment> parts;
  parts.reserve(heap.size());
  while (!heap.empty()) {
    parts.push_back(heap.top());
    heap.pop();
  }
  std::sort(parts.begin(), parts.end(),
            [](const QuadSegment& u, const QuadSegment& v) { return u.a < v.a; });
  total = 0.0;
  for (const QuadSegment& p : parts) total += p.value;
  if (total_err > tol)
    throw QuadratureError(
        "adaptive quadrature: tolerance " + std::to_string(tol) +
            " not reached with " + std::to_string(count) + " segments",
        total, total_err, count);
  if (err_out) *err_out = total_err;
  if (segs_out) *segs_out = count;
  return total;
}

}  // namespace tvq
