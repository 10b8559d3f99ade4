// One line per acceptance criterion; exit status is the number of failures.
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "plap/bvp.hpp"
#include "plap/conditions.hpp"
#include "plap/eigen.hpp"
#include "plap/error.hpp"
#include "plap/solver.hpp"
#include "plap/subsuper.hpp"
#include "plap/verify.hpp"

using namespace plap;

namespace {

constexpr double pi = std::numbers::pi;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

Problem step_problem(double p, double q, double mu, double c) {
  Problem pr;
  pr.p = p;
  pr.q = q;
  pr.domain = {0.0, 1.0};
  pr.window = {0.25, 0.75};
  const double br[] = {0.25, 0.75};
  const double vals[] = {-mu, 1.0, -mu};
  pr.m = Weight::step(pr.domain, br, vals);
  pr.c = Weight::constant(pr.domain, c);
  return pr;
}

Outcome eigen_oracle() {
  const Interval I{0.0, 1.0};
  const Weight zero = Weight::constant(I, 0.0), one = Weight::constant(I, 1.0);
  auto t0 = Clock::now();
  const double l2 = principal_eigenvalue(2.0, zero, one, I).lambda1;
  const double s2 = seconds_since(t0);
  t0 = Clock::now();
  const double l3 = principal_eigenvalue(3.0, zero, one, I).lambda1;
  const double s3 = seconds_since(t0);
  const double pi3 = 2.0 * pi / (3.0 * std::sin(pi / 3.0));
  const double e2 = std::abs(l2 / (pi * pi) - 1.0);
  const double e3 = std::abs(l3 / (2.0 * std::pow(pi3, 3.0)) - 1.0);
  return {e2 <= 1e-3 && e3 <= 1e-2 && s2 < 2.0 && s3 < 2.0,
          fmt("p=2 rel err %.2e (%.3fs), p=3 rel err %.2e (%.3fs)", e2, s2, e3, s3)};
}

Outcome constant_oracle() {
  const double c = c_pq(2.0, 0.5);
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  double worst = 0.0;
  int mismatched = 0;
  for (int trial = 0; trial < 100; ++trial) {
    // random piecewise-constant m (nonnegative on the window) and constant c
    Problem pr;
    pr.p = 2.0;
    pr.q = 0.01 + 0.98 * u01(rng);
    pr.domain = {0.0, 1.0};
    const double x0 = 0.05 + 0.4 * u01(rng), x1 = x0 + 0.1 + (0.9 - x0) * u01(rng);
    pr.window = {x0, x1};
    const double br[] = {x0, x1};
    const double vals[] = {-2.0 * u01(rng), 0.2 + u01(rng), -2.0 * u01(rng)};
    pr.m = Weight::step(pr.domain, br, vals);
    pr.c = Weight::constant(pr.domain, 4.0 * u01(rng));
    const double lam = principal_eigenvalue(pr, default_grid(pr, 256)).lambda1;
    const ConditionReport a = check_thm1_i(pr, lam), b = check_thm1_ii(pr, lam);
    const double d = std::max(std::abs(a.lhs - b.lhs) / std::max(1.0, std::abs(a.lhs)),
                              std::abs(a.rhs - b.rhs) / std::max(1.0, std::abs(a.rhs)));
    worst = std::max(worst, d);
    if (a.holds != b.holds) ++mismatched;
  }
  return {std::abs(c - 12.0) <= 1e-12 && worst <= 1e-12 && mismatched == 0,
          fmt("c_pq(2,1/2) = %.15g; 100 draws: max rel diff %.1e, holds mismatches %d", c, worst, mismatched)};
}

Outcome bvp_oracle() {
  const Interval I{0.0, 1.0};
  std::string detail;
  bool ok = true;
  for (double p : {1.5, 2.0, 3.0, 4.0}) {
    const GridFunction v = solve_g(p, Weight::constant(I, 0.0), Weight::constant(I, 1.0), I, 2048);
    const double pc = p / (p - 1.0);
    double err = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double x = v.grid()[i];
      err = std::max(err, std::abs(v[i] - (std::pow(0.5, pc) - std::pow(std::abs(0.5 - x), pc)) / pc));
    }
    ok = ok && err <= 1e-4;
    detail += fmt("%sp=%g err %.1e", detail.empty() ? "" : ", ", p, err);
  }
  return {ok, detail};
}

Outcome corollary_threshold() {
  const auto t0 = Clock::now();
  const double mu_star = 12.0 / ((9.0 / 16.0) * 4.0 * pi * pi);
  const Grid g0 = default_grid(step_problem(2.0, 0.5, 0.5, 0.0));
  const double lam = principal_eigenvalue(step_problem(2.0, 0.5, 0.5, 0.0), g0).lambda1;
  auto holds = [&](double mu) { return check_cor(step_problem(2.0, 0.5, mu, 0.0), lam).holds; };
  double lo = 0.1, hi = 2.0;
  const bool bracket = holds(lo) && !holds(hi);
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    (holds(mid) ? lo : hi) = mid;
  }
  const double flip = 0.5 * (lo + hi);
  const double rel = std::abs(flip / mu_star - 1.0);

  const Problem pr = step_problem(2.0, 0.5, 0.5, 0.0);
  const Grid g = default_grid(pr, 4096);
  double sub_margin = NAN, residual = NAN, min_interior = NAN;
  bool success = false;
  try {
    const SolutionReport r = solve_full(pr, g, Policy::Cor);
    sub_margin = r.sub.verified->margin;
    // independent re-verification of the emitted artifacts
    const WeakCheck sub_check = check_weak_subsolution(r.sub.u, pr, 1e-3);
    residual = r.residual;
    min_interior = r.min_interior;
    success = r.success && sub_check.passes && sub_margin <= 1e-3 && residual <= 1e-6 && min_interior > 0.0;
  } catch (const Error& e) {
    return {false, std::string("pipeline failed: ") + e.what()};
  }
  const double secs = seconds_since(t0);
  return {bracket && rel <= 1e-4 && success && secs < 30.0,
          fmt("flip at mu=%.8f vs %.8f (rel %.1e); mu=0.5: sub margin %.2e, residual %.2e, min %.2e, %.2fs", flip,
              mu_star, rel, sub_margin, residual, min_interior, secs)};
}

Outcome refinement() {
  struct Case {
    const char* family;
    Theorem t;
    double p, q, mu, c;
  };
  const Case cases[] = {{"power-A", Theorem::Thm1I, 2.5, 1.0, 0.05, 0.0},
                        {"power-B", Theorem::Thm1II, 1.8, 0.5, 0.05, 0.0},
                        {"sinh", Theorem::Thm2I, 2.0, 0.5, 0.3, 1.0},
                        {"exp", Theorem::Thm2II, 1.5, 0.25, 0.05, 1.0}};
  bool ok = true;
  std::string detail;
  for (const Case& cs : cases) {
    const Problem pr = step_problem(cs.p, cs.q, cs.mu, cs.c);
    double margin[2] = {NAN, NAN};
    std::string family;
    try {
      for (int k = 0; k < 2; ++k) {
        const Grid g = default_grid(pr, k == 0 ? 2048 : 4096);
        Certificate sub = build_subsolution(pr, cs.t, g);
        family = sub.construction.family;
        margin[k] = verify_certificate(sub, pr, 1e-3).margin;
      }
    } catch (const Error& e) {
      ok = false;
      detail += fmt("%s%s: %s", detail.empty() ? "" : "; ", cs.family, e.what());
      continue;
    }
    const double ratio = std::abs(margin[0]) / std::abs(margin[1]);
    const bool pass = family == cs.family && ratio >= 1.5;
    ok = ok && pass;
    detail += fmt("%s%s %.2e -> %.2e (x%.2f)", detail.empty() ? "" : "; ", cs.family, margin[0], margin[1], ratio);
  }
  return {ok, detail};
}

Outcome exp_implies_sinh() {
  std::mt19937_64 rng(0);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  int exp_holds = 0, counterexamples = 0;
  EigenOptions opt;
  opt.cells = 256;
  opt.tol = 1e-6;
  for (int trial = 0; trial < 1000; ++trial) {
    Problem pr;
    pr.p = 2.0 + 2.0 * u01(rng);
    pr.q = (pr.p - 1.0) * (0.001 + 0.998 * u01(rng));
    pr.domain = {0.0, 1.0};
    const double x0 = 0.4 * u01(rng), x1 = 0.6 + 0.4 * u01(rng);
    pr.window = {x0, x1};
    std::vector<double> br, vals;
    if (x0 > 0.0) br.push_back(x0);
    br.push_back(0.5 * (x0 + x1));
    if (x1 < 1.0) br.push_back(x1);
    if (x0 > 0.0) vals.push_back(-u01(rng) * std::pow(10.0, -2.0 * u01(rng)));
    vals.push_back(u01(rng) + 0.1);
    vals.push_back(u01(rng) + 0.1);
    if (x1 < 1.0) vals.push_back(-u01(rng) * std::pow(10.0, -2.0 * u01(rng)));
    pr.m = Weight::step(pr.domain, br, vals);
    pr.c = Weight::constant(pr.domain, 0.01 + 10.0 * u01(rng));
    const double lam = principal_eigenvalue(pr.p, pr.c, pr.m, pr.window, opt).lambda1;
    if (check_thm2_ii(pr, lam).holds) {
      ++exp_holds;
      if (!check_thm2_i(pr, lam).holds) ++counterexamples;
    }
  }
  int scalar_bad = 0;
  for (int i = 0; i < 10000; ++i) {
    const double t = 50.0 * i / 9999.0;
    if (std::sinh(t) > std::expm1(t)) ++scalar_bad;
  }
  return {counterexamples == 0 && scalar_bad == 0 && exp_holds > 0,
          fmt("1000 draws: exp condition held %d times, counterexamples %d; sinh t <= e^t - 1 violations %d",
              exp_holds, counterexamples, scalar_bad)};
}

Outcome manufactured() {
  Problem pr;
  pr.p = 2.0;
  pr.q = 0.5;
  pr.domain = {0.0, 1.0};
  pr.window = {0.0, 1.0};
  pr.m = Weight::interpolate_linear(pr.domain, 4096, [](double x) { return pi * pi * std::sqrt(std::sin(pi * x)); });
  pr.c = Weight::constant(pr.domain, 0.0);
  try {
    const SolutionReport r = solve_full(pr, default_grid(pr, 2048));
    double err = 0.0;
    for (std::size_t i = 0; i < r.u.size(); ++i) err = std::max(err, std::abs(r.u[i] - std::sin(pi * r.u.grid()[i])));
    return {r.success && err <= 1e-3, fmt("sup error %.2e via %s", err, std::string(to_string(*r.theorem)).c_str())};
  } catch (const Error& e) {
    return {false, e.what()};
  }
}

Outcome homogeneity() {
  const Problem pr = step_problem(3.0, 1.0, 0.3, 0.0);
  EigenOptions opt;
  opt.tol = 1e-13;
  const double base = principal_eigenvalue(pr.p, pr.c, pr.m, pr.window, opt).lambda1;
  double worst = 0.0;
  for (double tau : {0.5, 2.0, 10.0}) {
    const double l = principal_eigenvalue(pr.p, pr.c, pr.m.scaled(tau), pr.window, opt).lambda1;
    worst = std::max(worst, std::abs(l * tau / base - 1.0));
  }
  const Problem cp = step_problem(2.0, 0.5, 0.5, 0.0);
  Certificate sub = build_subsolution(cp, Theorem::Cor, default_grid(cp, 2048));
  const WeakCheck v = verify_certificate(sub, cp, 1e-3);
  bool still = v.passes;
  double identity = 0.0;
  for (double tau : {0.5, 2.0, 10.0}) {
    Problem scaled = cp;
    scaled.m = cp.m.scaled(1.0 / tau);
    const GridFunction u = rescale_certificate(sub.u, tau, cp);
    const WeakCheck w = check_weak_subsolution(u, scaled, 1e-3);
    still = still && w.passes;
    const double s = std::pow(rescale_factor(tau, cp), cp.p - 1.0);
    for (std::size_t i = 1; i + 1 < u.size(); ++i) {
      const double ref = s * v.scaled[i];
      identity = std::max(identity, std::abs(w.scaled[i] - ref) / std::max(std::abs(ref), 1e-300));
    }
  }
  return {worst <= 1e-8 && still && identity <= 1e-8,
          fmt("eigenvalue rel err %.1e; rescaled certificates pass, nodewise identity rel err %.1e", worst,
              identity)};
}

Outcome supersolution() {
  Problem pr;
  pr.p = 2.0;
  pr.q = 0.5;
  pr.domain = {0.0, 1.0};
  pr.window = {0.0, 1.0};
  pr.m = Weight::constant(pr.domain, 1.0);
  pr.c = Weight::constant(pr.domain, 0.0);
  Certificate sup = build_supersolution(pr, Grid::uniform(pr.domain, 2048));
  const WeakCheck& w = verify_certificate(sup, pr, 1e-6);
  const double k = sup.construction.k;
  return {std::abs(k - 9.0 / 8.0) <= 1e-6 && w.passes, fmt("k = %.10f, margin %.2e", k, w.margin)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"eigenvalue oracle", eigen_oracle},
      {"constant and p=2 coincidence", constant_oracle},
      {"auxiliary problem closed form", bvp_oracle},
      {"corollary threshold and pipeline", corollary_threshold},
      {"certificate refinement", refinement},
      {"exp condition implies sinh condition", exp_implies_sinh},
      {"manufactured solution", manufactured},
      {"homogeneity", homogeneity},
      {"supersolution constant", supersolution},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("[%s] criterion %zu: %s -- %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures;
}
