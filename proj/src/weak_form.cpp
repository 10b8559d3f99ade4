#include "plap/weak_form.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "plap/error.hpp"

namespace plap {

bool solve_spd(const SymTridiagonal& a, std::span<const double> rhs, std::vector<double>& x) {
  const std::size_t n = a.diag.size();
  if (n == 0) {
    x.clear();
    return true;
  }
  std::vector<double> d(n), l(n, 0.0), y(n);
  d[0] = a.diag[0];
  if (!(d[0] > 0.0) || !std::isfinite(d[0])) return false;
  y[0] = rhs[0];
  for (std::size_t i = 1; i < n; ++i) {
    l[i] = a.off[i - 1] / d[i - 1];
    d[i] = a.diag[i] - l[i] * a.off[i - 1];
    if (!(d[i] > 0.0) || !std::isfinite(d[i])) return false;
    y[i] = rhs[i] - l[i] * y[i - 1];
  }
  x.assign(n, 0.0);
  x[n - 1] = y[n - 1] / d[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) x[i] = y[i] / d[i] - l[i + 1] * x[i + 1];
  return true;
}

WeakForm::WeakForm(Grid grid, double p, Weight c, Weight source, SourceKind kind, double q)
    : grid_(std::move(grid)), p_(p), q_(q), c_(std::move(c)), source_(std::move(source)), kind_(kind) {
  if (!(p_ > 1.0)) fail(ErrorCode::InvalidExponent, "weak form needs p > 1");
  const std::vector<double> cb = c_.breakpoints();
  const std::vector<double> sb = source_.breakpoints();
  parts_.resize(grid_.cells());
  hat_mass_.assign(grid_.size(), 0.0);
  std::size_t ci = 0, si = 0;
  for (std::size_t cell = 0; cell < grid_.cells(); ++cell) {
    const double lo = grid_[cell], hi = grid_[cell + 1];
    hat_mass_[cell] += 0.5 * (hi - lo);
    hat_mass_[cell + 1] += 0.5 * (hi - lo);
    std::vector<double> cuts{lo};
    while (ci < cb.size() && cb[ci] <= lo) ++ci;
    while (si < sb.size() && sb[si] <= lo) ++si;
    for (std::size_t k = ci; k < cb.size() && cb[k] < hi; ++k) cuts.push_back(cb[k]);
    for (std::size_t k = si; k < sb.size() && sb[k] < hi; ++k) cuts.push_back(sb[k]);
    cuts.push_back(hi);
    cuts = merge_points(std::move(cuts), hi - lo, 1e-12);
    if (cuts.back() != hi) cuts.back() = hi;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      const double a = cuts[k], b = cuts[k + 1];
      parts_[cell].push_back({a, b, c_.locate_cell(a, b), source_.locate_cell(a, b)});
    }
  }
}

template <typename Visit>
void WeakForm::for_cells(std::span<const double> u, std::size_t first, std::size_t last, Visit&& visit) const {
  const QuadRule& base = gauss_legendre(8);
  std::vector<double> xs, ws;
  for (std::size_t cell = first; cell < last; ++cell) {
    const double xl = grid_[cell], xr = grid_[cell + 1], h = xr - xl;
    const double ul = u[cell], ur = u[cell + 1];
    const double s = (ur - ul) / h;
    for (const Part& part : parts_[cell]) {
      xs.clear();
      ws.clear();
      const double ua = ul + s * (part.lo - xl), ub = ul + s * (part.hi - xl);
      append_power_rule(part.lo, part.hi, ua, ub, base, xs, ws);
      for (std::size_t k = 0; k < xs.size(); ++k) {
        const double x = xs[k];
        const double psi_r = (x - xl) / h;
        const double psi_l = 1.0 - psi_r;
        // Interpolate from the nearer node to keep tiny values accurate near zeros.
        const double ux = psi_r < 0.5 ? ul + s * (x - xl) : ur - s * (xr - x);
        visit(cell, ws[k], ux, psi_l, psi_r, c_.eval_piece(part.c_piece, x), source_.eval_piece(part.s_piece, x));
      }
    }
  }
}

std::vector<double> WeakForm::gradient(std::span<const double> u) const {
  std::vector<double> g(grid_.size(), 0.0);
  for (std::size_t cell = 0; cell < grid_.cells(); ++cell) {
    const double s = (u[cell + 1] - u[cell]) / grid_.width(cell);
    const double flux = s == 0.0 ? 0.0 : std::copysign(std::pow(std::abs(s), p_ - 1.0), s);
    g[cell] -= flux;
    g[cell + 1] += flux;
  }
  const double pm1 = p_ - 1.0;
  const bool load = kind_ == SourceKind::Load;
  for_each_point(u, [&](std::size_t cell, double w, double ux, double psi_l, double psi_r, double cx, double sx) {
    double react = 0.0;
    if (cx != 0.0 && ux != 0.0) react = cx * std::copysign(std::pow(std::abs(ux), pm1), ux);
    if (load) {
      react -= sx;
    } else if (sx != 0.0 && ux > 0.0) {
      react -= sx * std::pow(ux, q_);
    }
    g[cell] += w * react * psi_l;
    g[cell + 1] += w * react * psi_r;
  });
  return g;
}

double WeakForm::node_gradient(std::span<const double> u, std::size_t node) const {
  const std::size_t first = node == 0 ? 0 : node - 1;
  const std::size_t last = std::min(node + 1, grid_.cells());
  double a = 0.0;
  for (std::size_t cell = first; cell < last; ++cell) {
    const double s = (u[cell + 1] - u[cell]) / grid_.width(cell);
    const double flux = s == 0.0 ? 0.0 : std::copysign(std::pow(std::abs(s), p_ - 1.0), s);
    a += cell == node ? -flux : flux;
  }
  const double pm1 = p_ - 1.0;
  const bool load = kind_ == SourceKind::Load;
  for_cells(u, first, last, [&](std::size_t cell, double w, double ux, double psi_l, double psi_r, double cx, double sx) {
    double react = 0.0;
    if (cx != 0.0 && ux != 0.0) react = cx * std::copysign(std::pow(std::abs(ux), pm1), ux);
    if (load) {
      react -= sx;
    } else if (sx != 0.0 && ux > 0.0) {
      react -= sx * std::pow(ux, q_);
    }
    a += w * react * (cell == node ? psi_l : psi_r);
  });
  return a;
}

std::vector<double> WeakForm::rounding_floor(std::span<const double> u) const {
  std::vector<double> out(grid_.size(), 0.0);
  const double ulp = std::numeric_limits<double>::epsilon();
  for (std::size_t cell = 0; cell < grid_.cells(); ++cell) {
    const double h = grid_.width(cell);
    const double s = std::abs(u[cell + 1] - u[cell]) / h;
    const double ds = 16.0 * ulp * std::max(std::abs(u[cell]), std::abs(u[cell + 1])) / h;
    const double noise = std::pow(s + ds, p_ - 1.0) - std::pow(s, p_ - 1.0);
    out[cell] += noise;
    out[cell + 1] += noise;
  }
  return out;
}

double WeakForm::energy(std::span<const double> u) const {
  double e = 0.0;
  for (std::size_t cell = 0; cell < grid_.cells(); ++cell) {
    const double h = grid_.width(cell);
    const double s = (u[cell + 1] - u[cell]) / h;
    e += h * std::pow(std::abs(s), p_) / p_;
  }
  const bool load = kind_ == SourceKind::Load;
  for_each_point(u, [&](std::size_t, double w, double ux, double, double, double cx, double sx) {
    double val = 0.0;
    if (cx != 0.0) val += cx * std::pow(std::abs(ux), p_) / p_;
    if (load) {
      val -= sx * ux;
    } else if (sx != 0.0 && ux > 0.0) {
      val -= sx * std::pow(ux, q_ + 1.0) / (q_ + 1.0);
    }
    e += w * val;
  });
  return e;
}

SymTridiagonal WeakForm::hessian(std::span<const double> u, double delta, bool convexify,
                                 std::span<const unsigned char> secant_cells) const {
  SymTridiagonal hs{std::vector<double>(grid_.size(), 0.0), std::vector<double>(grid_.cells(), 0.0)};
  const double pm1 = p_ - 1.0, pm2 = p_ - 2.0;
  for (std::size_t cell = 0; cell < grid_.cells(); ++cell) {
    const double h = grid_.width(cell);
    const double s = (u[cell + 1] - u[cell]) / h;
    const bool sec = !secant_cells.empty() && secant_cells[cell] != 0;
    const double k = (sec ? std::max(pm1, 1.0) : pm1) * std::pow(s * s + delta * delta, 0.5 * pm2) / h;
    hs.diag[cell] += k;
    hs.diag[cell + 1] += k;
    hs.off[cell] -= k;
  }
  const bool power = kind_ == SourceKind::Power;
  for_each_point(u, [&](std::size_t cell, double w, double ux, double psi_l, double psi_r, double cx, double sx) {
    double d = 0.0;
    if (cx != 0.0) d += pm1 * cx * std::pow(ux * ux + delta * delta, 0.5 * pm2);
    if (power && sx != 0.0 && ux > 0.0 && (!convexify || sx < 0.0)) d -= q_ * sx * std::pow(ux, q_ - 1.0);
    hs.diag[cell] += w * d * psi_l * psi_l;
    hs.diag[cell + 1] += w * d * psi_r * psi_r;
    hs.off[cell] += w * d * psi_l * psi_r;
  });
  return hs;
}

void relax_nodes(const WeakForm& wf, std::vector<double>& u, std::span<const std::size_t> nodes,
                 std::span<const double> lower, std::span<const double> upper) {
  const double inf = std::numeric_limits<double>::infinity();
  for (std::size_t i : nodes) {
    const double lo_bound = lower.empty() ? -inf : lower[i];
    const double hi_bound = upper.empty() ? inf : upper[i];
    const double x0 = u[i];
    auto f = [&](double x) {
      u[i] = x;
      return wf.node_gradient(u, i);
    };
    const double f0 = f(x0);
    if (f0 == 0.0) continue;
    // Expand away from x0 in the descent direction until the sign flips or a bound is hit.
    const double dir = f0 > 0.0 ? -1.0 : 1.0;
    double step = std::max(std::abs(x0), 1e-300) * 1e-14;
    double inner = x0, outer = x0;
    bool bracketed = false;
    for (int k = 0; k < 1100; ++k) {
      double t = x0 + dir * step;
      if (t <= lo_bound || t >= hi_bound) t = dir < 0.0 ? lo_bound : hi_bound;
      const double ft = f(t);
      if ((ft > 0.0) != (f0 > 0.0) || ft == 0.0) {
        outer = t;
        bracketed = true;
        break;
      }
      inner = t;
      if (t == lo_bound || t == hi_bound) break;
      step *= 2.0;
    }
    if (!bracketed) {
      u[i] = inner;
      continue;
    }
    double a = inner, b = outer;
    for (int k = 0; k < 200; ++k) {
      const double mid = 0.5 * (a + b);
      if (mid == a || mid == b) break;
      const double fm = f(mid);
      if (fm == 0.0) {
        a = b = mid;
        break;
      }
      if ((fm > 0.0) == (f0 > 0.0)) {
        a = mid;
      } else {
        b = mid;
      }
    }
    const double fa = f(a), fb = f(b);
    u[i] = std::abs(fa) <= std::abs(fb) ? a : b;
  }
}

}  // namespace plap
