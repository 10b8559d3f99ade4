#include "plap/bvp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "plap/error.hpp"
#include "plap/weak_form.hpp"

namespace plap {

namespace {

double scaled_residual(const std::vector<double>& grad, const std::vector<double>& mass) {
  double r = 0.0;
  for (std::size_t i = 1; i + 1 < grad.size(); ++i) r = std::max(r, std::abs(grad[i]) / mass[i]);
  return r;
}

// Converged when every interior node is within tol of zero, up to the rounding floor there.
bool converged(const WeakForm& wf, std::span<const double> u, const std::vector<double>& grad, double tol) {
  const std::vector<double> floor = wf.rounding_floor(u);
  const std::vector<double>& mass = wf.hat_mass();
  for (std::size_t i = 1; i + 1 < grad.size(); ++i) {
    if (std::abs(grad[i]) > tol * mass[i] + 4.0 * floor[i]) return false;
  }
  return true;
}

// Interior block of a full-node tridiagonal matrix.
SymTridiagonal interior(const SymTridiagonal& h) {
  const std::size_t n = h.diag.size();
  SymTridiagonal out;
  out.diag.assign(h.diag.begin() + 1, h.diag.end() - 1);
  out.off.assign(h.off.begin() + 1, h.off.begin() + static_cast<std::ptrdiff_t>(n - 2));
  return out;
}

// Start from the p = 2 solution, scaled to minimize the energy along its ray.
std::vector<double> initial_guess(const WeakForm& wf, double p, const Weight& c, const Weight& g) {
  const Grid& grid = wf.grid();
  const std::size_t n = grid.size();
  std::vector<double> zero(n, 0.0);
  const WeakForm lin(grid, 2.0, c, g, SourceKind::Load);
  const std::vector<double> g0 = lin.gradient(zero);
  const SymTridiagonal h = interior(lin.hessian(zero, 0.0, false));
  std::vector<double> rhs(n - 2), x;
  for (std::size_t i = 1; i + 1 < n; ++i) rhs[i - 1] = -g0[i];
  std::vector<double> v(n, 0.0);
  if (n < 3 || !solve_spd(h, rhs, x)) return v;
  std::copy(x.begin(), x.end(), v.begin() + 1);

  double b = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) b -= v[i] * g0[i];
  if (!(b > 0.0)) return v;
  const double a = p * (wf.energy(v) + b);
  if (!(a > 0.0)) return v;
  const double alpha = std::pow(b / a, 1.0 / (p - 1.0));
  for (double& x_i : v) x_i *= alpha;
  return v;
}

}  // namespace

BvpResult solve_g_detailed(double p, const Weight& c, const Weight& g, const Grid& grid, const BvpOptions& opts) {
  if (!(p > 1.0)) fail(ErrorCode::InvalidExponent, "solve_g needs p > 1");
  if (grid.size() < 3) fail(ErrorCode::InvalidArgument, "solve_g needs at least one interior node");
  const WeakForm wf(grid, p, c, g, SourceKind::Load);
  const std::vector<double>& mass = wf.hat_mass();
  const std::size_t n = grid.size();

  BvpResult out{GridFunction::zero(grid), 0.0, 0, {}, {}};
  std::vector<double> u = initial_guess(wf, p, c, g);
  std::vector<double> trial(n), d;
  double e = wf.energy(u);
  std::vector<double> grad = wf.gradient(u);
  double res = scaled_residual(grad, mass);

  for (std::size_t it = 0;; ++it) {
    out.residual_history.push_back(res);
    out.energy_history.push_back(e);
    if (res <= opts.tol || converged(wf, u, grad, opts.tol)) {
      out.iterations = it;
      break;
    }
    if (it >= opts.max_iter) {
      std::ostringstream os;
      os << "solve_g did not converge in " << opts.max_iter << " iterations (residual " << res << ")";
      fail(ErrorCode::SolverFailure, os.str());
    }
    std::vector<double> rhs(n - 2);
    for (std::size_t i = 1; i + 1 < n; ++i) rhs[i - 1] = -grad[i];
    std::vector<unsigned char> secant(n - 1, 0);
    auto direction = [&](bool guard) {
      std::fill(secant.begin(), secant.end(), 0);
      for (int pass = 0; pass < 4; ++pass) {
        if (!solve_spd(interior(wf.hessian(u, opts.delta, false, secant)), rhs, d)) {
          d.resize(n - 2);
          for (std::size_t i = 1; i + 1 < n; ++i) d[i - 1] = -grad[i] / mass[i];
          break;
        }
        if (!guard) break;
        // Cells whose slope the step would flip get the secant coefficient.
        bool changed = false;
        for (std::size_t k = 0; k + 1 < n; ++k) {
          const double dl = k == 0 ? 0.0 : d[k - 1], dr = k + 2 == n ? 0.0 : d[k];
          const double s0 = u[k + 1] - u[k], s1 = s0 + dr - dl;
          if (!secant[k] && s0 * s1 < 0.0) {
            secant[k] = 1;
            changed = true;
          }
        }
        if (!changed) break;
      }
      double slope = 0.0;
      for (std::size_t i = 1; i + 1 < n; ++i) slope += grad[i] * d[i - 1];
      return slope;
    };
    auto search = [&](double slope) {
      for (double alpha = 1.0; alpha >= 1e-12; alpha *= 0.5) {
        for (std::size_t i = 1; i + 1 < n; ++i) trial[i] = u[i] + alpha * d[i - 1];
        trial.front() = trial.back() = 0.0;
        const double et = wf.energy(trial);
        if (et <= e + 1e-4 * alpha * slope) return et < e - 1e-14 * std::abs(e);
      }
      return false;
    };
    // Fallback once energy differences drown in rounding: backtrack on the residual norm.
    auto merit = [&](const std::vector<double>& gr) {
      double sum = 0.0;
      for (std::size_t i = 1; i + 1 < n; ++i) sum += gr[i] * gr[i] / mass[i];
      return sum;
    };
    std::vector<double> tgrad;
    if (search(direction(p < 2.0))) {
      tgrad = wf.gradient(trial);
    } else {
      const double m0 = merit(grad);
      bool ok = false;
      for (double alpha = 1.0; alpha >= 1e-9 && !ok; alpha *= 0.5) {
        for (std::size_t i = 1; i + 1 < n; ++i) trial[i] = u[i] + alpha * d[i - 1];
        trial.front() = trial.back() = 0.0;
        tgrad = wf.gradient(trial);
        ok = merit(tgrad) < (1.0 - 1e-4 * alpha) * m0;
      }
      if (!ok) {
        trial = u;
        tgrad = grad;
      }
      // Newton resolves the remaining error poorly: local exact solves around the offending nodes.
      const std::vector<double> floor = wf.rounding_floor(trial);
      std::vector<std::size_t> block;
      for (std::size_t i = 1; i + 1 < n; ++i) {
        if (std::abs(tgrad[i]) > opts.tol * mass[i] + 4.0 * floor[i]) block.push_back(i);
      }
      if (!block.empty()) {
        std::vector<double> relaxed = trial;
        for (std::size_t i = block.front() > 3 ? block.front() - 2 : 1; i < std::min(block.back() + 3, n - 1); ++i) {
          if (!std::binary_search(block.begin(), block.end(), i)) block.insert(std::lower_bound(block.begin(), block.end(), i), i);
        }
        for (int sweep = 0; sweep < 50; ++sweep) {
          relax_nodes(wf, relaxed, block);
          std::reverse(block.begin(), block.end());
        }
        std::vector<double> rgrad = wf.gradient(relaxed);
        if (merit(rgrad) < merit(tgrad)) {
          trial.swap(relaxed);
          tgrad.swap(rgrad);
          ok = true;
        }
      }
      if (!ok) {
        std::ostringstream os;
        os << "solve_g stagnated at residual " << res;
        fail(ErrorCode::SolverFailure, os.str());
      }
    }
    const double tres = scaled_residual(tgrad, mass);
    u.swap(trial);
    grad.swap(tgrad);
    res = tres;
    e = wf.energy(u);
  }

  if (g.ess_inf() >= 0.0 && c.ess_inf() >= 0.0) {
    const double top = *std::max_element(u.begin(), u.end());
    const double bottom = *std::min_element(u.begin(), u.end());
    if (bottom < -1e-10 * std::max(1.0, top)) {
      fail(ErrorCode::SolverFailure, "solve_g violated the maximum principle (min " + std::to_string(bottom) + ")");
    }
  }
  out.v = GridFunction(grid, std::move(u));
  out.residual = res;
  return out;
}

GridFunction solve_g(double p, const Weight& c, const Weight& g, const Grid& grid, double tol) {
  BvpOptions opts;
  opts.tol = tol;
  return solve_g_detailed(p, c, g, grid, opts).v;
}

GridFunction solve_g(double p, const Weight& c, const Weight& g, Interval domain, std::size_t cells, double tol) {
  std::vector<double> extra = c.breakpoints();
  const std::vector<double> gb = g.breakpoints();
  extra.insert(extra.end(), gb.begin(), gb.end());
  return solve_g(p, c, g, Grid::uniform_with(domain, cells, extra), tol);
}

double residual_g(const GridFunction& v, double p, const Weight& c, const Weight& g) {
  const WeakForm wf(v.grid(), p, c, g, SourceKind::Load);
  return scaled_residual(wf.gradient(v.values()), wf.hat_mass());
}

}  // namespace plap
