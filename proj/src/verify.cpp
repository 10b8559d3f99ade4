#include "plap/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "plap/quadrature.hpp"

namespace plap {

namespace {

constexpr std::size_t kPoints = 10;
constexpr double kRatio = 0.25;
constexpr int kMaxLevels = 30;

struct Accumulator {
  const QuadRule& rule;
  std::vector<double> xs;
  std::vector<double> ws;

  void plain(double lo, double hi) {
    const double h = hi - lo;
    for (std::size_t k = 0; k < rule.x.size(); ++k) {
      xs.push_back(lo + h * rule.x[k]);
      ws.push_back(h * rule.w[k]);
    }
  }

  // [lo, hi] with a linear u equal to ua, ub at the ends; refine geometrically toward a small end.
  void part(double lo, double hi, double ua, double ub) {
    const double big = std::max(std::abs(ua), std::abs(ub));
    const double small = std::min(std::abs(ua), std::abs(ub));
    if (big == 0.0 || small >= kRatio * big) {
      plain(lo, hi);
      return;
    }
    const bool toward_lo = std::abs(ua) <= std::abs(ub);
    const double len = hi - lo;
    const double root_dist = small / (big - small) * len;
    double outer = len;
    for (int level = 0; level < kMaxLevels; ++level) {
      const double inner = outer * kRatio;
      if (toward_lo) {
        plain(lo + inner, lo + outer);
      } else {
        plain(hi - outer, hi - inner);
      }
      outer = inner;
      if (outer <= root_dist) break;
    }
    if (toward_lo) {
      plain(lo, lo + outer);
    } else {
      plain(hi - outer, hi);
    }
  }
};

std::vector<double> cut_points(const Weight& c, const Weight& m) {
  std::vector<double> cuts = c.breakpoints();
  const std::vector<double> mb = m.breakpoints();
  cuts.insert(cuts.end(), mb.begin(), mb.end());
  std::sort(cuts.begin(), cuts.end());
  return cuts;
}

double phi(double s, double r) { return s == 0.0 ? 0.0 : std::copysign(std::pow(std::abs(s), r), s); }

}  // namespace

std::vector<double> hat_integrals(const Grid& grid) {
  std::vector<double> mass(grid.size(), 0.0);
  for (std::size_t k = 0; k < grid.cells(); ++k) {
    mass[k] += 0.5 * grid.width(k);
    mass[k + 1] += 0.5 * grid.width(k);
  }
  return mass;
}

std::vector<double> weak_residuals(const GridFunction& v, double p, double q, const Weight& c, const Weight& m) {
  const Grid& grid = v.grid();
  std::vector<double> a(grid.size(), 0.0);
  const std::vector<double> cuts = cut_points(c, m);
  Accumulator acc{gauss_legendre(kPoints), {}, {}};
  auto cut = cuts.begin();
  for (std::size_t k = 0; k < grid.cells(); ++k) {
    const double xl = grid[k], xr = grid[k + 1], h = xr - xl;
    const double ul = v[k], ur = v[k + 1];
    const double s = (ur - ul) / h;
    const double flux = phi(s, p - 1.0);
    a[k] -= flux;
    a[k + 1] += flux;

    std::vector<double> pts{xl};
    while (cut != cuts.end() && *cut <= xl) ++cut;
    for (auto it = cut; it != cuts.end() && *it < xr; ++it) {
      if (*it - pts.back() > 1e-13 * h && xr - *it > 1e-13 * h) pts.push_back(*it);
    }
    if ((ul < 0.0 && ur > 0.0) || (ul > 0.0 && ur < 0.0)) {
      const double z = xl - ul / s;
      pts.push_back(z);
      std::sort(pts.begin(), pts.end());
    }
    pts.push_back(xr);

    auto value = [&](double x) { return x - xl <= xr - x ? ul + s * (x - xl) : ur - s * (xr - x); };
    for (std::size_t j = 0; j + 1 < pts.size(); ++j) {
      const double lo = pts[j], hi = pts[j + 1];
      if (!(hi > lo)) continue;
      acc.xs.clear();
      acc.ws.clear();
      acc.part(lo, hi, value(lo), value(hi));
      const std::size_t ci = c.locate_cell(lo, hi), mi = m.locate_cell(lo, hi);
      for (std::size_t t = 0; t < acc.xs.size(); ++t) {
        const double x = acc.xs[t];
        const double u = value(x);
        double r = c.eval_piece(ci, x) * phi(u, p - 1.0);
        if (u > 0.0) r -= m.eval_piece(mi, x) * std::pow(u, q);
        const double psi_r = (x - xl) / h;
        a[k] += acc.ws[t] * r * (1.0 - psi_r);
        a[k + 1] += acc.ws[t] * r * psi_r;
      }
    }
  }
  return a;
}

namespace {

WeakCheck run_check(const GridFunction& v, const Problem& prob, double tol, double sign) {
  WeakCheck out;
  out.tol = tol;
  const std::vector<double> a = weak_residuals(v, prob.p, prob.q, prob.c, prob.m);
  const std::vector<double> mass = hat_integrals(v.grid());
  out.scaled.assign(a.size(), 0.0);
  out.margin = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i + 1 < a.size(); ++i) {
    out.scaled[i] = a[i] / mass[i];
    const double viol = sign * out.scaled[i];
    if (viol > out.margin) {
      out.margin = viol;
      out.worst_index = i;
    }
  }
  if (a.size() < 3) out.margin = 0.0;
  out.worst_x = v.grid()[out.worst_index];
  return out;
}

}  // namespace

WeakCheck check_weak_subsolution(const GridFunction& v, const Problem& prob, double tol) {
  WeakCheck out = run_check(v, prob, tol, 1.0);
  const double scale = std::max(1.0, std::abs(v.max()));
  if (v.min() < -1e-14 * scale) {
    out.admissible = false;
    out.reason = "function takes negative values";
  } else if (std::abs(v[0]) > 1e-14 * scale || std::abs(v[v.size() - 1]) > 1e-14 * scale) {
    out.admissible = false;
    out.reason = "function does not vanish at the endpoints";
  }
  out.passes = out.admissible && out.margin <= tol;
  if (out.admissible) out.reason = out.passes ? "passes" : "weak inequality violated";
  return out;
}

WeakCheck check_weak_supersolution(const GridFunction& w, const Problem& prob, double tol) {
  WeakCheck out = run_check(w, prob, tol, -1.0);
  const double scale = std::max(1.0, std::abs(w.max()));
  if (w.min() < -1e-14 * scale) {
    out.admissible = false;
    out.reason = "function takes negative values";
  }
  out.passes = out.admissible && out.margin <= tol;
  if (out.admissible) out.reason = out.passes ? "passes" : "weak inequality violated";
  return out;
}

double solution_residual(const GridFunction& u, const Problem& prob, std::span<const unsigned char> skip) {
  const std::vector<double> a = weak_residuals(u, prob.p, prob.q, prob.c, prob.m);
  const std::vector<double> mass = hat_integrals(u.grid());
  double r = 0.0;
  for (std::size_t i = 1; i + 1 < a.size(); ++i) {
    if (!skip.empty() && skip[i] != 0) continue;
    r = std::max(r, std::abs(a[i]) / mass[i]);
  }
  return r;
}

PositivityReport positivity_profile(const GridFunction& u, double threshold) {
  PositivityReport out;
  const Grid& g = u.grid();
  const std::size_t n = u.size();
  if (n < 3) return out;
  out.min_interior = u[1];
  out.argmin = 1;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (u[i] < out.min_interior) {
      out.min_interior = u[i];
      out.argmin = i;
    }
  }
  out.argmin_x = g[out.argmin];
  out.left_ratio = u[1] / (g[1] - g[0]);
  out.right_ratio = u[n - 2] / (g[n - 1] - g[n - 2]);
  for (std::size_t i = 1; i + 1 < n;) {
    if (!(u[i] < threshold)) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 2 < n && u[j + 1] < threshold) ++j;
    const Run run{i, j, g[i], g[j]};
    if (i == 1 || j == n - 2) {
      out.boundary_runs.push_back(run);
    } else {
      out.dead_core.push_back(run);
    }
    i = j + 1;
  }
  return out;
}

RandomTestReport random_test_functions(const GridFunction& v, const Problem& prob, InequalityKind kind, double tol,
                                       std::size_t count, std::uint64_t seed) {
  RandomTestReport out;
  out.count = count;
  out.worst = -std::numeric_limits<double>::infinity();
  const std::vector<double> a = weak_residuals(v, prob.p, prob.q, prob.c, prob.m);
  const std::vector<double> mass = hat_integrals(v.grid());
  const std::size_t n = v.size();
  if (n < 3) {
    out.worst = 0.0;
    return out;
  }
  const double sign = kind == InequalityKind::Sub ? 1.0 : -1.0;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> node(1, n - 2);
  std::uniform_int_distribution<int> knots_count(1, 8);
  std::uniform_real_distribution<double> height(0.0, 1.0);
  std::vector<double> psi(n);
  for (std::size_t t = 0; t < count; ++t) {
    // Piecewise-linear on knots at grid nodes, zero at the ends of its support.
    const int k = knots_count(rng);
    std::vector<std::size_t> knots;
    for (int j = 0; j < k + 2; ++j) knots.push_back(node(rng));
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
    if (knots.size() < 2) {
      knots = {knots.front() > 1 ? knots.front() - 1 : knots.front(), std::min(knots.front() + 1, n - 1)};
    }
    std::vector<double> h(knots.size());
    for (std::size_t j = 1; j + 1 < h.size(); ++j) h[j] = height(rng);
    if (h.size() == 2) h = {0.0, 0.0};
    std::fill(psi.begin(), psi.end(), 0.0);
    for (std::size_t j = 0; j + 1 < knots.size(); ++j) {
      const std::size_t i0 = knots[j], i1 = knots[j + 1];
      for (std::size_t i = i0; i <= i1; ++i) {
        const double w = (v.grid()[i] - v.grid()[i0]) / (v.grid()[i1] - v.grid()[i0]);
        psi[i] = std::max(psi[i], (1.0 - w) * h[j] + w * h[j + 1]);
      }
    }
    if (h.size() == 2) {
      psi[(knots[0] + knots[1]) / 2] = 1.0;
    }
    double num = 0.0, den = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      num += psi[i] * a[i];
      den += psi[i] * mass[i];
    }
    if (!(den > 0.0)) continue;
    const double r = sign * num / den;
    out.worst = std::max(out.worst, r);
    if (r > tol) ++out.violations;
  }
  if (!std::isfinite(out.worst)) out.worst = 0.0;
  return out;
}

}  // namespace plap
