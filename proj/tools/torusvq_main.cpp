// torusvq command-line tool: solve, sweep, boundary curves, self
// verification, posterior dumps, and the hinge-activation approximation,
// all through the shared-library C interface.
//
// Output is deterministic byte-for-byte for identical arguments: numbers
// are printed in shortest round-trip form and timestamps only ever go to
// the sidecar manifest written next to --out files.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "torusvq/torusvq.h"

using nlohmann::json;

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// ----------------------------------------------------------------- helpers

std::string fmt_double(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

std::string iso_utc_now() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct ManifoldArg {
  std::string name = "circle";
  int value() const {
    if (name == "circle") return TVQ_MANIFOLD_CIRCLE;
    if (name == "torus-joint") return TVQ_MANIFOLD_TORUS_JOINT;
    return TVQ_MANIFOLD_TORUS_FACTORIAL;
  }
};

const char* regime_name(int regime) {
  return regime == TVQ_REGIME_TWO_OVERLAP ? "two-overlap" : "three-overlap";
}

const char* manifold_label(int manifold) {
  switch (manifold) {
    case TVQ_MANIFOLD_CIRCLE: return "circle";
    case TVQ_MANIFOLD_TORUS_JOINT: return "torus-joint";
    default: return "torus-factorial";
  }
}

// Writes the payload (and, for --out targets, the sidecar manifest with the
// only timestamp we ever emit).  Returns false on I/O failure.
bool emit(const std::string& payload, const std::string& out_path,
          const json& manifest) {
  if (out_path.empty()) {
    std::cout << payload;
    return true;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) {
    std::cerr << "error: cannot open " << out_path << " for writing\n";
    return false;
  }
  f << payload;
  f.close();
  json side = manifest;
  side["timestamp"] = iso_utc_now();
  side["output"] = out_path;
  std::ofstream mf(out_path + ".manifest.json", std::ios::binary);
  if (!mf) {
    std::cerr << "error: cannot write sidecar manifest for " << out_path
              << "\n";
    return false;
  }
  mf << side.dump(2) << "\n";
  return true;
}

int fail_status(tvq_status st, const std::string& where) {
  std::cerr << "error (" << where << "): " << tvq_last_error() << "\n";
  // Domain and argument problems are usage errors (2); solver/quadrature
  // breakdowns are runtime failures (1).
  return (st == TVQ_ERR_DOMAIN || st == TVQ_ERR_INVALID_ARG) ? 2 : 1;
}

// Tiny deterministic generator for the verification theta samples; same
// stream rule as the library's Monte Carlo chunks.
struct SplitMix64 {
  std::uint64_t state;
  std::uint64_t next() {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1p-53; }
};

json solution_json(int manifold, double M, double n, const tvq_solution& sol) {
  json j;
  j["manifold"] = manifold_label(manifold);
  j["M"] = M;
  j["n"] = n;
  j["m_eff"] = sol.m_eff;
  j["regime"] = regime_name(sol.regime);
  j["s"] = sol.s;
  j["s_normalized"] = sol.s_normalized;
  j["r"] = sol.r;
  j["d1"] = sol.d1;
  j["d2"] = sol.d2;
  j["d_total"] = sol.d_total;
  return j;
}

std::string solution_csv(int manifold, double M, double n,
                         const tvq_solution& sol) {
  std::ostringstream os;
  os << "manifold,M,n,m_eff,regime,s,s_normalized,r,d1,d2,d_total\n"
     << manifold_label(manifold) << ',' << fmt_double(M) << ','
     << fmt_double(n) << ',' << fmt_double(sol.m_eff) << ','
     << regime_name(sol.regime) << ',' << fmt_double(sol.s) << ','
     << fmt_double(sol.s_normalized) << ',' << fmt_double(sol.r) << ','
     << fmt_double(sol.d1) << ',' << fmt_double(sol.d2) << ','
     << fmt_double(sol.d_total) << '\n';
  return os.str();
}

// ------------------------------------------------------------------- solve

int cmd_solve(const ManifoldArg& manifold, double M, double n,
              const std::string& format, const std::string& out_path) {
  tvq_solution sol;
  const tvq_status st = tvq_solve(manifold.value(), M, n, &sol);
  if (st != TVQ_OK) return fail_status(st, "solve");

  json manifest{{"command", "solve"},
                {"version", tvq_version()},
                {"params",
                 {{"manifold", manifold.name}, {"M", M}, {"n", n},
                  {"format", format}}}};
  std::string payload;
  if (format == "csv") {
    payload = solution_csv(manifold.value(), M, n, sol);
  } else {
    json j{{"manifest", manifest},
           {"result", solution_json(manifold.value(), M, n, sol)}};
    payload = j.dump(2) + "\n";
  }
  return emit(payload, out_path, manifest) ? 0 : 1;
}

// ------------------------------------------------------------------- sweep

int cmd_sweep(const ManifoldArg& manifold, const std::vector<double>& Ms,
              double n_min, double n_max, int n_steps,
              const std::string& format, const std::string& out_path) {
  if (Ms.empty() || n_steps < 1 || !(n_min >= 1.0) || !(n_max >= n_min)) {
    std::cerr << "error (sweep): empty grid (need at least one --M, "
                 "n-steps >= 1, and 1 <= n-min <= n-max)\n";
    return 2;
  }
  std::vector<double> ns;
  if (n_steps == 1) {
    ns.push_back(n_min);
  } else {
    const double ratio = n_max / n_min;
    for (int j = 0; j < n_steps; ++j)
      ns.push_back(n_min *
                   std::pow(ratio, static_cast<double>(j) / (n_steps - 1)));
  }

  json rows = json::array();
  std::ostringstream csv;
  csv << "manifold,M,n,m_eff,regime,s,s_normalized,r,d1,d2,d_total,error\n";
  int ok_rows = 0;
  for (double M : Ms) {
    for (double n : ns) {
      tvq_solution sol;
      const tvq_status st = tvq_solve(manifold.value(), M, n, &sol);
      if (st == TVQ_OK) {
        ++ok_rows;
        json r = solution_json(manifold.value(), M, n, sol);
        r["error"] = nullptr;
        rows.push_back(r);
        csv << manifold_label(manifold.value()) << ',' << fmt_double(M) << ','
            << fmt_double(n) << ',' << fmt_double(sol.m_eff) << ','
            << regime_name(sol.regime) << ',' << fmt_double(sol.s) << ','
            << fmt_double(sol.s_normalized) << ',' << fmt_double(sol.r) << ','
            << fmt_double(sol.d1) << ',' << fmt_double(sol.d2) << ','
            << fmt_double(sol.d_total) << ",\n";
      } else {
        json r{{"manifold", manifold_label(manifold.value())},
               {"M", M},
               {"n", n},
               {"error", tvq_last_error()}};
        rows.push_back(r);
        csv << manifold_label(manifold.value()) << ',' << fmt_double(M) << ','
            << fmt_double(n) << ",,,,,,,,,"
            << csv_escape(tvq_last_error()) << "\n";
      }
    }
  }
  if (ok_rows == 0) {
    std::cerr << "error (sweep): no grid point solved\n";
    return 2;
  }

  json manifest{{"command", "sweep"},
                {"version", tvq_version()},
                {"params",
                 {{"manifold", manifold.name},
                  {"M", Ms},
                  {"n_min", n_min},
                  {"n_max", n_max},
                  {"n_steps", n_steps},
                  {"format", format}}}};
  std::string payload;
  if (format == "csv") {
    payload = csv.str();
  } else {
    json j{{"manifest", manifest}, {"result", {{"rows", rows}}}};
    payload = j.dump(2) + "\n";
  }
  return emit(payload, out_path, manifest) ? 0 : 1;
}

// ---------------------------------------------------------------- boundary

int cmd_boundary(const std::string& kind, double lo, double hi, int steps,
                 const std::string& format, const std::string& out_path) {
  if (steps < 1 || !(hi >= lo)) {
    std::cerr << "error (boundary): empty range\n";
    return 2;
  }

  json rows = json::array();
  std::ostringstream csv;
  if (kind == "joint-factorial") {
    double cross = 0.0;
    tvq_status st = tvq_asymptotic_crossing_m(&cross);
    if (st != TVQ_OK) return fail_status(st, "boundary");
    csv << "n,m_critical,found,m_crossing_asymptote\n";
    for (int i = 0; i < steps; ++i) {
      const double n =
          steps == 1 ? lo
                     : lo * std::pow(hi / lo, static_cast<double>(i) /
                                                  (steps - 1));
      double Mb = 0.0;
      int found = 0;
      st = tvq_winner_boundary(n, &Mb, &found);
      if (st != TVQ_OK) return fail_status(st, "boundary");
      json r{{"n", n}, {"m_crossing_asymptote", cross}};
      r["m_critical"] = found ? json(Mb) : json(nullptr);
      r["found"] = found != 0;
      rows.push_back(r);
      csv << fmt_double(n) << ',' << (found ? fmt_double(Mb) : "") << ','
          << (found ? "true" : "false") << ',' << fmt_double(cross) << "\n";
    }
  } else if (kind == "two-three-circle" || kind == "two-three-factorial") {
    const int manifold = kind == "two-three-circle"
                             ? TVQ_MANIFOLD_CIRCLE
                             : TVQ_MANIFOLD_TORUS_FACTORIAL;
    csv << "m_eff,n_exact,n_asymptote\n";
    for (int i = 0; i < steps; ++i) {
      const double m_eff =
          steps == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (steps - 1);
      double n_exact = 0.0, n_asym = 0.0;
      const tvq_status st =
          tvq_boundary_two_three(m_eff, manifold, &n_exact, &n_asym);
      if (st != TVQ_OK) return fail_status(st, "boundary");
      rows.push_back(json{{"m_eff", m_eff},
                          {"n_exact", n_exact},
                          {"n_asymptote", n_asym}});
      csv << fmt_double(m_eff) << ',' << fmt_double(n_exact) << ','
          << fmt_double(n_asym) << "\n";
    }
  } else {
    std::cerr << "error (boundary): unknown kind " << kind << "\n";
    return 2;
  }

  json manifest{{"command", "boundary"},
                {"version", tvq_version()},
                {"params",
                 {{"kind", kind}, {"min", lo}, {"max", hi}, {"steps", steps},
                  {"format", format}}}};
  std::string payload;
  if (format == "csv") {
    payload = csv.str();
  } else {
    json j{{"manifest", manifest}, {"result", {{"rows", rows}}}};
    payload = j.dump(2) + "\n";
  }
  return emit(payload, out_path, manifest) ? 0 : 1;
}

// ------------------------------------------------------------------ verify

struct FamilyReport {
  std::string id;
  bool passed = true;
  double worst = 0.0;
  double threshold = 0.0;
  std::string detail;
};

struct VerifyPoint {
  int manifold;
  double M;
  double n;
};

std::vector<VerifyPoint> verify_grid(bool full) {
  const std::vector<double> m_effs =
      full ? std::vector<double>{4, 6, 8, 12, 16, 32}
           : std::vector<double>{4, 8, 16};
  const std::vector<double> ns = full
                                     ? std::vector<double>{1.5, 2, 5, 20, 100,
                                                           10000}
                                     : std::vector<double>{2, 100};
  std::vector<VerifyPoint> pts;
  for (double me : m_effs)
    for (double n : ns) {
      pts.push_back({TVQ_MANIFOLD_CIRCLE, me, n});
      pts.push_back({TVQ_MANIFOLD_TORUS_FACTORIAL, 2.0 * me, n});
    }
  return pts;
}

int cmd_verify(const std::string& level, std::uint64_t seed, double tol,
               const std::string& format, const std::string& out_path) {
  const bool full = level == "full";
  std::vector<FamilyReport> reports;

  // 1. Closed form vs full-period quadrature across the grid.
  {
    FamilyReport rep{"closed-form-agreement", true, 0.0, 1e-8, ""};
    for (const VerifyPoint& pt : verify_grid(full)) {
      tvq_solution sol;
      if (tvq_solve(pt.manifold, pt.M, pt.n, &sol) != TVQ_OK) {
        rep.passed = false;
        rep.detail = std::string("solve failed: ") + tvq_last_error();
        break;
      }
      tvq_quad_result q;
      if (tvq_quadrature(pt.manifold, pt.M, pt.n, sol.s, sol.regime, sol.r,
                         tol, &q) != TVQ_OK) {
        rep.passed = false;
        rep.detail = std::string("quadrature failed: ") + tvq_last_error();
        break;
      }
      const double rel =
          std::fabs((q.d1 + q.d2 - sol.d_total) / sol.d_total);
      if (rel > rep.worst) {
        rep.worst = rel;
        rep.detail = std::string(manifold_label(pt.manifold)) + " M=" +
                     fmt_double(pt.M) + " n=" + fmt_double(pt.n);
      }
    }
    rep.passed = rep.passed && rep.worst <= rep.threshold;
    reports.push_back(rep);
  }

  // 2. Stationarity residuals (posterior variation + vector variation).
  {
    FamilyReport rep{"stationarity", true, 0.0, 1e-9, ""};
    std::vector<VerifyPoint> pts;
    for (double me : full ? std::vector<double>{8, 16}
                          : std::vector<double>{8})
      for (double n : {2.0, 100.0}) {
        pts.push_back({TVQ_MANIFOLD_CIRCLE, me, n});
        pts.push_back({TVQ_MANIFOLD_TORUS_FACTORIAL, 2.0 * me, n});
      }
    for (const VerifyPoint& pt : pts) {
      tvq_solution sol;
      if (tvq_solve(pt.manifold, pt.M, pt.n, &sol) != TVQ_OK) {
        rep.passed = false;
        rep.detail = std::string("solve failed: ") + tvq_last_error();
        break;
      }
      const double half = kPi / sol.m_eff + sol.s;  // support half-width
      SplitMix64 g{seed ^ 0x5DEECE66DULL};
      int used = 0;
      while (used < 50) {
        const double theta = (2.0 * g.uniform() - 1.0) * half * 0.98;
        double p = 0.0;
        tvq_profile* prof = nullptr;
        if (tvq_profile_build(sol.m_eff, sol.s, sol.regime, &prof) != TVQ_OK)
          break;
        tvq_profile_eval(prof, theta, &p);
        tvq_profile_free(prof);
        if (!(p > 0.0)) {
          ++used;  // outside the support: skip but never loop forever
          continue;
        }
        double resid = 0.0;
        if (tvq_stationarity_p(pt.manifold, pt.M, pt.n, sol.s, sol.regime,
                               sol.r, theta, 0, &resid) != TVQ_OK) {
          rep.passed = false;
          rep.detail = std::string("P residual failed: ") + tvq_last_error();
          break;
        }
        if (std::fabs(resid) > rep.worst) {
          rep.worst = std::fabs(resid);
          rep.detail = std::string("P ") + manifold_label(pt.manifold) +
                       " M=" + fmt_double(pt.M) + " n=" + fmt_double(pt.n);
        }
        ++used;
      }
      double xr[2] = {0.0, 0.0};
      if (tvq_stationarity_x(pt.manifold, pt.M, pt.n, sol.s, sol.regime,
                             sol.r, 1e-12, xr) != TVQ_OK) {
        rep.passed = false;
        rep.detail = std::string("X residual failed: ") + tvq_last_error();
        break;
      }
      const double norm = std::sqrt(xr[0] * xr[0] + xr[1] * xr[1]);
      if (norm > rep.worst) {
        rep.worst = norm;
        rep.detail = std::string("X ") + manifold_label(pt.manifold) + " M=" +
                     fmt_double(pt.M) + " n=" + fmt_double(pt.n);
      }
    }
    rep.passed = rep.passed && rep.worst <= rep.threshold;
    reports.push_back(rep);
  }

  // 3. Derivative-free minimization agrees with the analytic root.
  {
    FamilyReport rep{"minimize-agreement", true, 0.0, 1e-6, ""};
    std::vector<VerifyPoint> pts{{TVQ_MANIFOLD_CIRCLE, 8, 2}};
    if (full) {
      pts.push_back({TVQ_MANIFOLD_CIRCLE, 8, 100});
      pts.push_back({TVQ_MANIFOLD_TORUS_FACTORIAL, 16, 2});
      pts.push_back({TVQ_MANIFOLD_TORUS_FACTORIAL, 16, 100});
    }
    for (const VerifyPoint& pt : pts) {
      tvq_solution sol;
      tvq_minimize_result num;
      if (tvq_solve(pt.manifold, pt.M, pt.n, &sol) != TVQ_OK ||
          tvq_numeric_minimize_s(pt.manifold, pt.M, pt.n, sol.regime, &num) !=
              TVQ_OK) {
        rep.passed = false;
        rep.detail = tvq_last_error();
        break;
      }
      const double ds = std::fabs(num.s - sol.s);
      if (ds > rep.worst) {
        rep.worst = ds;
        rep.detail = std::string(manifold_label(pt.manifold)) + " M=" +
                     fmt_double(pt.M) + " n=" + fmt_double(pt.n);
      }
      if (num.d < sol.d_total - 1e-9) {
        rep.passed = false;
        rep.detail = "numeric minimum fell below the closed form at " +
                     std::string(manifold_label(pt.manifold)) + " M=" +
                     fmt_double(pt.M);
      }
    }
    rep.passed = rep.passed && rep.worst <= rep.threshold;
    reports.push_back(rep);
  }

  // 4. Monte Carlo z-scores against the quadrature reference.
  {
    FamilyReport rep{"mc-z-scores", true, 0.0, 5.0, ""};
    const long long samples = full ? 1000000 : 100000;
    const int n_seeds = full ? 20 : 3;
    tvq_solution sol;
    tvq_quad_result q;
    if (tvq_solve(TVQ_MANIFOLD_CIRCLE, 8, 2, &sol) != TVQ_OK ||
        tvq_quadrature(TVQ_MANIFOLD_CIRCLE, 8, 2, sol.s, sol.regime, sol.r,
                       tol, &q) != TVQ_OK) {
      rep.passed = false;
      rep.detail = tvq_last_error();
    } else {
      double zsum = 0.0;
      int zcount = 0;
      for (int i = 0; i < n_seeds; ++i) {
        tvq_mc_result mc;
        if (tvq_mc_estimate(TVQ_MANIFOLD_CIRCLE, 8, 2, sol.s, sol.regime,
                            sol.r, samples, seed + i, &mc) != TVQ_OK) {
          rep.passed = false;
          rep.detail = tvq_last_error();
          break;
        }
        const double z1 = (mc.d1_hat - q.d1) / mc.d1_se;
        const double z2 = (mc.d2_hat - q.d2) / mc.d2_se;
        zsum += z1 + z2;
        zcount += 2;
        rep.worst = std::max({rep.worst, std::fabs(z1), std::fabs(z2)});
      }
      if (zcount > 0) {
        const double mean_z = zsum / zcount;
        rep.detail = "mean z = " + fmt_double(mean_z) + " over " +
                     std::to_string(zcount) + " estimates";
        if (std::fabs(mean_z) > 0.5) rep.passed = false;
      }
    }
    rep.passed = rep.passed && rep.worst <= rep.threshold;
    reports.push_back(rep);
  }

  bool all_passed = true;
  for (const FamilyReport& r : reports) all_passed = all_passed && r.passed;

  json manifest{{"command", "verify"},
                {"version", tvq_version()},
                {"params",
                 {{"level", level}, {"seed", seed}, {"tol", tol},
                  {"format", format}}}};
  std::string payload;
  if (format == "csv") {
    std::ostringstream csv;
    csv << "family,status,worst,threshold,detail\n";
    for (const FamilyReport& r : reports)
      csv << r.id << ',' << (r.passed ? "pass" : "fail") << ','
          << fmt_double(r.worst) << ',' << fmt_double(r.threshold) << ','
          << csv_escape(r.detail) << "\n";
    payload = csv.str();
  } else {
    json fams = json::array();
    for (const FamilyReport& r : reports)
      fams.push_back(json{{"family", r.id},
                          {"status", r.passed ? "pass" : "fail"},
                          {"worst", r.worst},
                          {"threshold", r.threshold},
                          {"detail", r.detail}});
    json j{{"manifest", manifest},
           {"result", {{"families", fams}, {"passed", all_passed}}}};
    payload = j.dump(2) + "\n";
  }
  if (!emit(payload, out_path, manifest)) return 1;
  if (!all_passed) {
    std::cerr << "verification failed:";
    for (const FamilyReport& r : reports)
      if (!r.passed) std::cerr << " " << r.id;
    std::cerr << "\n";
    return 1;
  }
  return 0;
}

// ---------------------------------------------------------------- posterior

int cmd_posterior(const ManifoldArg& manifold, double M, double n, int points,
                  const std::string& format, const std::string& out_path) {
  if (points < 1) {
    std::cerr << "error (posterior): points >= 1 required\n";
    return 2;
  }
  tvq_solution sol;
  tvq_status st = tvq_solve(manifold.value(), M, n, &sol);
  if (st != TVQ_OK) return fail_status(st, "posterior");
  tvq_profile* prof = nullptr;
  st = tvq_profile_build(sol.m_eff, sol.s, sol.regime, &prof);
  if (st != TVQ_OK) return fail_status(st, "posterior");

  const double delta = 2.0 * kPi / sol.m_eff;
  json rows = json::array();
  std::ostringstream csv;
  csv << "theta,p,p_prev,p_next\n";
  for (int i = 0; i < points; ++i) {
    const double theta =
        points == 1 ? 0.0
                    : -delta + 2.0 * delta * static_cast<double>(i) /
                                   (points - 1);
    double p = 0.0, pp = 0.0, pn = 0.0;
    tvq_profile_eval(prof, theta, &p);
    tvq_profile_eval(prof, theta + delta, &pp);  // unit at -delta
    tvq_profile_eval(prof, theta - delta, &pn);  // unit at +delta
    rows.push_back(
        json{{"theta", theta}, {"p", p}, {"p_prev", pp}, {"p_next", pn}});
    csv << fmt_double(theta) << ',' << fmt_double(p) << ',' << fmt_double(pp)
        << ',' << fmt_double(pn) << "\n";
  }
  tvq_profile_free(prof);

  json manifest{{"command", "posterior"},
                {"version", tvq_version()},
                {"params",
                 {{"manifold", manifold.name}, {"M", M}, {"n", n},
                  {"points", points}, {"format", format}}}};
  std::string payload;
  if (format == "csv") {
    payload = csv.str();
  } else {
    json j{{"manifest", manifest},
           {"result",
            {{"solution", solution_json(manifold.value(), M, n, sol)},
             {"rows", rows}}}};
    payload = j.dump(2) + "\n";
  }
  return emit(payload, out_path, manifest) ? 0 : 1;
}

// ------------------------------------------------------------------- approx

int cmd_approx(double M, double n, int points, const std::string& format,
               const std::string& out_path) {
  tvq_solution sol;
  tvq_status st = tvq_solve(TVQ_MANIFOLD_CIRCLE, M, n, &sol);
  if (st != TVQ_OK) return fail_status(st, "approx");
  if (sol.regime != TVQ_REGIME_TWO_OVERLAP) {
    std::cerr << "error (approx): the hinge approximation covers the "
                 "two-overlap regime only; (M=" << fmt_double(M)
              << ", n=" << fmt_double(n) << ") solves to three-overlap\n";
    return 2;
  }
  tvq_profile* prof = nullptr;
  st = tvq_profile_build(sol.m_eff, sol.s, sol.regime, &prof);
  if (st != TVQ_OK) return fail_status(st, "approx");

  double sup = 0.0, argmax = 0.0, exact_cubic = 0.0, approx_cubic = 0.0;
  st = tvq_approx_error(sol.s, M, &sup, &argmax, &exact_cubic, &approx_cubic);
  if (st != TVQ_OK) {
    tvq_profile_free(prof);
    return fail_status(st, "approx");
  }
  double exponent = 0.0;
  st = tvq_fitted_transition_exponent(sol.s, M, &exponent);
  if (st != TVQ_OK) {
    tvq_profile_free(prof);
    return fail_status(st, "approx");
  }

  const double x = kPi / M;
  json rows = json::array();
  std::ostringstream csv;
  csv << "kind,theta,p_exact,p_approx,abs_error,sup_error,argmax,exact_cubic,"
         "approx_cubic,fitted_exponent\n";
  for (int i = 0; i < points; ++i) {
    const double theta =
        points == 1
            ? x
            : (x - sol.s) + 2.0 * sol.s * static_cast<double>(i) / (points - 1);
    double p_exact = 0.0, p_approx = 0.0;
    tvq_profile_eval(prof, theta, &p_exact);
    tvq_approx_posterior(theta, sol.s, M, &p_approx);
    const double err = std::fabs(p_exact - p_approx);
    rows.push_back(json{{"kind", "sample"},
                        {"theta", theta},
                        {"p_exact", p_exact},
                        {"p_approx", p_approx},
                        {"abs_error", err}});
    csv << "sample," << fmt_double(theta) << ',' << fmt_double(p_exact) << ','
        << fmt_double(p_approx) << ',' << fmt_double(err) << ",,,,,\n";
  }
  tvq_profile_free(prof);
  json summary{{"sup_error", sup},
               {"argmax", argmax},
               {"exact_cubic", exact_cubic},
               {"approx_cubic", approx_cubic},
               {"fitted_exponent", exponent}};
  csv << "summary,,,,," << fmt_double(sup) << ',' << fmt_double(argmax) << ','
      << fmt_double(exact_cubic) << ',' << fmt_double(approx_cubic) << ','
      << fmt_double(exponent) << "\n";

  json manifest{{"command", "approx"},
                {"version", tvq_version()},
                {"params",
                 {{"M", M}, {"n", n}, {"points", points}, {"format", format}}}};
  std::string payload;
  if (format == "csv") {
    payload = csv.str();
  } else {
    json j{{"manifest", manifest},
           {"result",
            {{"solution",
              solution_json(TVQ_MANIFOLD_CIRCLE, M, n, sol)},
             {"rows", rows},
             {"summary", summary}}}};
    payload = j.dump(2) + "\n";
  }
  return emit(payload, out_path, manifest) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"analytic soft vector quantization on the circle and 2-torus"};
  app.require_subcommand(1);

  std::string format = "json";
  std::string out_path;

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "solve one (manifold, M, n)");
  ManifoldArg solve_manifold;
  double solve_M = 8.0, solve_n = 2.0;
  solve_cmd->add_option("--manifold", solve_manifold.name, "manifold")
      ->check(CLI::IsMember({"circle", "torus-joint", "torus-factorial"}));
  solve_cmd->add_option("--M", solve_M, "total unit count")->required();
  solve_cmd->add_option("--n", solve_n, "events per stimulus")->required();

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "solve over an (M, n) grid");
  ManifoldArg sweep_manifold;
  std::vector<double> sweep_Ms;
  double sweep_nmin = 1.0, sweep_nmax = 100.0;
  int sweep_nsteps = 0;
  sweep_cmd->add_option("--manifold", sweep_manifold.name, "manifold")
      ->check(CLI::IsMember({"circle", "torus-joint", "torus-factorial"}));
  sweep_cmd->add_option("--M", sweep_Ms, "unit counts (repeatable)");
  sweep_cmd->add_option("--n-min", sweep_nmin, "smallest n");
  sweep_cmd->add_option("--n-max", sweep_nmax, "largest n");
  sweep_cmd->add_option("--n-steps", sweep_nsteps,
                        "geometric steps from n-min to n-max");

  // boundary
  auto* boundary_cmd =
      app.add_subcommand("boundary", "regime / winner boundary curves");
  std::string boundary_kind = "two-three-circle";
  double boundary_min = 4.0, boundary_max = 32.0;
  int boundary_steps = 0;
  boundary_cmd->add_option("--kind", boundary_kind, "curve to sample")
      ->check(CLI::IsMember(
          {"two-three-circle", "two-three-factorial", "joint-factorial"}));
  boundary_cmd->add_option("--min", boundary_min, "range start");
  boundary_cmd->add_option("--max", boundary_max, "range end");
  boundary_cmd->add_option("--steps", boundary_steps, "sample count");

  // verify
  auto* verify_cmd =
      app.add_subcommand("verify", "self-check against the numeric oracle");
  std::string verify_level = "fast";
  std::uint64_t verify_seed = 1;
  double verify_tol = 1e-11;
  verify_cmd->add_option("--level", verify_level, "fast or full")
      ->check(CLI::IsMember({"fast", "full"}));
  verify_cmd->add_option("--seed", verify_seed, "base seed");
  verify_cmd->add_option("--tol", verify_tol, "quadrature tolerance");

  // posterior
  auto* posterior_cmd =
      app.add_subcommand("posterior", "dump the solved posterior profile");
  ManifoldArg posterior_manifold;
  double posterior_M = 8.0, posterior_n = 2.0;
  int posterior_points = 201;
  posterior_cmd
      ->add_option("--manifold", posterior_manifold.name, "manifold")
      ->check(CLI::IsMember({"circle", "torus-joint", "torus-factorial"}));
  posterior_cmd->add_option("--M", posterior_M, "total unit count")
      ->required();
  posterior_cmd->add_option("--n", posterior_n, "events per stimulus")
      ->required();
  posterior_cmd->add_option("--points", posterior_points,
                            "grid points over [-delta, delta]");

  // approx
  auto* approx_cmd = app.add_subcommand(
      "approx", "hinge-activation approximation of the circle posterior");
  double approx_M = 8.0, approx_n = 2.0;
  int approx_points = 201;
  approx_cmd->add_option("--M", approx_M, "unit count")->required();
  approx_cmd->add_option("--n", approx_n, "events per stimulus")->required();
  approx_cmd->add_option("--points", approx_points,
                         "grid points over the transition");

  for (CLI::App* sub : {solve_cmd, sweep_cmd, boundary_cmd, verify_cmd,
                        posterior_cmd, approx_cmd}) {
    sub->add_option("--format", format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", out_path,
                    "write here (plus <out>.manifest.json) instead of stdout");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (solve_cmd->parsed())
    return cmd_solve(solve_manifold, solve_M, solve_n, format, out_path);
  if (sweep_cmd->parsed())
    return cmd_sweep(sweep_manifold, sweep_Ms, sweep_nmin, sweep_nmax,
                     sweep_nsteps, format, out_path);
  if (boundary_cmd->parsed())
    return cmd_boundary(boundary_kind, boundary_min, boundary_max,
                        boundary_steps, format, out_path);
  if (verify_cmd->parsed())
    return cmd_verify(verify_level, verify_seed, verify_tol, format, out_path);
  if (posterior_cmd->parsed())
    return cmd_posterior(posterior_manifold, posterior_M, posterior_n,
                         posterior_points, format, out_path);
  if (approx_cmd->parsed())
    return cmd_approx(approx_M, approx_n, approx_points, format, out_path);
  return 2;
}
