#include "plap/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "plap/error.hpp"

namespace plap {

namespace {

struct State {
  double u;
  double w;
};

struct Rhs {
  double p;
  double inv_pm1;
  double lambda;
  const Weight* c;
  const Weight* m;
  std::size_t c_piece;
  std::size_t m_piece;

  State operator()(double x, const State& y) const {
    const double du = y.w == 0.0 ? 0.0 : std::copysign(std::pow(std::abs(y.w), inv_pm1), y.w);
    const double coef = c->eval_piece(c_piece, x) - lambda * m->eval_piece(m_piece, x);
    const double pu = y.u == 0.0 ? 0.0 : std::copysign(std::pow(std::abs(y.u), p - 1.0), y.u);
    return {du, coef * pu};
  }
};

State rk4_step(const Rhs& f, double x, const State& y, double h) {
  const State k1 = f(x, y);
  const State k2 = f(x + 0.5 * h, {y.u + 0.5 * h * k1.u, y.w + 0.5 * h * k1.w});
  const State k3 = f(x + 0.5 * h, {y.u + 0.5 * h * k2.u, y.w + 0.5 * h * k2.w});
  const State k4 = f(x + h, {y.u + h * k3.u, y.w + h * k3.w});
  return {y.u + h / 6.0 * (k1.u + 2.0 * k2.u + 2.0 * k3.u + k4.u),
          y.w + h / 6.0 * (k1.w + 2.0 * k2.w + 2.0 * k3.w + k4.w)};
}

double phi_conj(double w, double inv_pm1) { return w == 0.0 ? 0.0 : std::copysign(std::pow(std::abs(w), inv_pm1), w); }

std::size_t step_factor(double p) { return (p < 1.2 || p > 6.0) ? 8 : 4; }

std::vector<double> shooting_mesh(const Grid& base, double p, const Weight& c, const Weight& m) {
  const Grid fine = base.refined(step_factor(p));
  const Interval w = base.interval();
  std::vector<double> extra;
  for (double x : c.breakpoints()) {
    if (x > w.a && x < w.b) extra.push_back(x);
  }
  for (double x : m.breakpoints()) {
    if (x > w.a && x < w.b) extra.push_back(x);
  }
  const Grid merged = fine.with_points(extra);
  return {merged.nodes().begin(), merged.nodes().end()};
}

}  // namespace

GridFunction ShootResult::as_grid_function() const { return {Grid(x), u}; }

ShootResult shoot(double lambda, double p, const Weight& c, const Weight& m, std::span<const double> mesh) {
  if (!(p > 1.0)) fail(ErrorCode::InvalidExponent, "shooting needs p > 1");
  if (mesh.size() < 2) fail(ErrorCode::InvalidArgument, "shooting mesh needs at least one step");
  const double span_len = mesh.back() - mesh.front();
  Rhs f{p, 1.0 / (p - 1.0), lambda, &c, &m, 0, 0};
  ShootResult out;
  out.x.assign(mesh.begin(), mesh.end());
  out.u.resize(mesh.size());
  out.flux.resize(mesh.size());
  State y{0.0, 1.0};
  out.u[0] = y.u;
  out.flux[0] = y.w;
  for (std::size_t k = 0; k + 1 < mesh.size(); ++k) {
    const double x = mesh[k], h = mesh[k + 1] - x;
    if (!(h > 1e-15 * span_len)) fail(ErrorCode::IntegrationFailure, "shooting step size underflow");
    f.c_piece = c.locate_cell(x, x + h);
    f.m_piece = m.locate_cell(x, x + h);
    const State next = rk4_step(f, x, y, h);
    if (!std::isfinite(next.u) || !std::isfinite(next.w)) fail(ErrorCode::IntegrationFailure, "shooting diverged");
    if (!out.first_zero && y.u > 0.0 && next.u <= 0.0) {
      // Local bisection on the length of a single step from x.
      double lo = 0.0, hi = h;
      for (int it = 0; it < 80 && hi - lo > 1e-16 * span_len; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (rk4_step(f, x, y, mid).u > 0.0) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      out.first_zero = x + 0.5 * (lo + hi);
    }
    y = next;
    out.u[k + 1] = y.u;
    out.flux[k + 1] = y.w;
  }
  return out;
}

ShootResult shoot(double lambda, double p, const Weight& c, const Weight& m, Interval window, std::size_t steps) {
  const Grid g = Grid::uniform(window, steps);
  return shoot(lambda, p, c, m, g.nodes());
}

// ---------------------------------------------------------------------------

double EigenPair::value(double x) const {
  if (x <= window.a || x >= window.b) return 0.0;
  auto it = std::upper_bound(mesh.begin(), mesh.end(), x);
  const std::size_t k = static_cast<std::size_t>(it - mesh.begin()) - 1;
  const double h = mesh[k + 1] - mesh[k];
  const double t = (x - mesh[k]) / h;
  const double t2 = t * t, t3 = t2 * t;
  const double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t, h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
  return h00 * mesh_value[k] + h10 * h * mesh_slope[k] + h01 * mesh_value[k + 1] + h11 * h * mesh_slope[k + 1];
}

double EigenPair::derivative(double x) const {
  if (x < window.a || x > window.b) return 0.0;
  auto it = std::upper_bound(mesh.begin(), mesh.end(), x);
  std::size_t k = static_cast<std::size_t>(it - mesh.begin());
  k = k == 0 ? 0 : std::min(k - 1, mesh.size() - 2);
  const double h = mesh[k + 1] - mesh[k];
  const double t = (x - mesh[k]) / h;
  const double t2 = t * t;
  const double d00 = 6 * t2 - 6 * t, d10 = 3 * t2 - 4 * t + 1, d01 = -6 * t2 + 6 * t, d11 = 3 * t2 - 2 * t;
  return (d00 * mesh_value[k] + d01 * mesh_value[k + 1]) / h + d10 * mesh_slope[k] + d11 * mesh_slope[k + 1];
}

namespace {

EigenPair solve_eigen(double p, const Weight& c, const Weight& m, const Grid& base, const EigenOptions& options) {
  const Interval window = base.interval();
  if (!(m.positive_mass(window.a, window.b) > 0.0)) {
    fail(ErrorCode::NoEigenvalue, "m+ vanishes identically on the window");
  }
  const std::vector<double> mesh = shooting_mesh(base, p, c, m);
  auto hits = [&](double lambda) { return shoot(lambda, p, c, m, mesh).first_zero.has_value(); };

  double lo = 0.0;
  if (hits(lo)) fail(ErrorCode::NoEigenvalue, "solution vanishes inside the window already at lambda = 0");

  // Initial guess from the constant-coefficient closed form.
  const double pi_p = 2.0 * std::numbers::pi / (p * std::sin(std::numbers::pi / p));
  const double m_max = m.range_on(window.a, window.b).first;
  double hi = (p - 1.0) * std::pow(pi_p / window.length(), p) / m_max;
  std::size_t doublings = 0;
  while (!hits(hi)) {
    lo = hi;
    hi *= 2.0;
    if (++doublings > options.max_doublings || !std::isfinite(hi)) {
      fail(ErrorCode::BracketFailure, "eigenvalue bracket expansion exceeded its cap");
    }
  }
  while (hi - lo > options.tol * std::max(1.0, hi)) {
    const double mid = 0.5 * (lo + hi);
    if (hits(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  // The first-zero position decreases in lambda, so the bracket must still straddle the window end.
  const ShootResult at_lo = shoot(lo, p, c, m, mesh);
  const ShootResult at_hi = shoot(hi, p, c, m, mesh);
  if (at_lo.first_zero || !at_hi.first_zero) fail(ErrorCode::BracketFailure, "eigenvalue bracket lost its orientation");
  const double f_lo = at_lo.u.back(), f_hi = at_hi.u.back();
  double lambda = 0.5 * (lo + hi);
  if (f_lo > 0.0 && f_hi <= 0.0 && f_lo - f_hi > 0.0) lambda = lo + (hi - lo) * (f_lo / (f_lo - f_hi));

  ShootResult sol = shoot(lambda, p, c, m, mesh);
  sol.u.back() = 0.0;
  double scale = 0.0;
  for (std::size_t k = 1; k + 1 < sol.u.size(); ++k) scale = std::max(scale, sol.u[k]);
  if (!(scale > 0.0)) fail(ErrorCode::NoEigenvalue, "eigenfunction is not positive");

  EigenPair out;
  out.lambda1 = lambda;
  out.window = window;
  out.mesh = sol.x;
  out.mesh_value.resize(sol.u.size());
  out.mesh_slope.resize(sol.u.size());
  const double inv_pm1 = 1.0 / (p - 1.0);
  for (std::size_t k = 0; k < sol.u.size(); ++k) {
    out.mesh_value[k] = std::max(sol.u[k], 0.0) / scale;
    out.mesh_slope[k] = phi_conj(sol.flux[k], inv_pm1) / scale;
  }
  out.mesh_value.front() = 0.0;

  // Rayleigh quotient by the trapezoid rule on the shooting mesh.
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k + 1 < out.mesh.size(); ++k) {
    const double xl = out.mesh[k], xr = out.mesh[k + 1], h = xr - xl;
    const std::size_t ci = c.locate_cell(xl, xr), mi = m.locate_cell(xl, xr);
    const double ul = out.mesh_value[k], ur = out.mesh_value[k + 1];
    const double dl = out.mesh_slope[k], dr = out.mesh_slope[k + 1];
    num += 0.5 * h *
           (std::pow(std::abs(dl), p) + c.eval_piece(ci, xl) * std::pow(ul, p) + std::pow(std::abs(dr), p) +
            c.eval_piece(ci, xr) * std::pow(ur, p));
    den += 0.5 * h * (m.eval_piece(mi, xl) * std::pow(ul, p) + m.eval_piece(mi, xr) * std::pow(ur, p));
  }
  out.rayleigh = num / den;

  std::vector<double> base_values(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) {
    auto it = std::lower_bound(out.mesh.begin(), out.mesh.end(), base[i] - 1e-12 * window.length());
    const std::size_t k = static_cast<std::size_t>(it - out.mesh.begin());
    base_values[i] = out.mesh_value[std::min(k, out.mesh.size() - 1)];
  }
  base_values.front() = 0.0;
  base_values.back() = 0.0;
  out.phi = normalize_sup(GridFunction(base, std::move(base_values)));
  return out;
}

}  // namespace

EigenPair principal_eigenvalue(double p, const Weight& c, const Weight& m, Interval window,
                               const EigenOptions& options) {
  if (!(p > 1.0)) fail(ErrorCode::InvalidExponent, "eigenvalue problem needs p > 1");
  const Grid base = options.ambient ? options.ambient->restricted(window) : Grid::uniform(window, options.cells);
  return solve_eigen(p, c, m, base, options);
}

EigenPair principal_eigenvalue(const Problem& prob, const Grid& ambient, double tol) {
  EigenOptions opts;
  opts.tol = tol;
  opts.ambient = ambient;
  return principal_eigenvalue(prob.p, prob.c, prob.m, prob.window, opts);
}

GridFunction normalize_sup(const GridFunction& phi) {
  const std::size_t k = phi.argmax();
  const double mx = phi[k];
  if (!(mx > 0.0)) fail(ErrorCode::InvalidCertificate, "cannot sup-normalize a function with nonpositive maximum");
  std::vector<double> v(phi.values().begin(), phi.values().end());
  for (double& x : v) x /= mx;
  v[k] = 1.0;
  return {phi.grid(), std::move(v)};
}

}  // namespace plap
