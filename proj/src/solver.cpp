#include "plap/solver.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <locale>
#include <ostream>
#include <sstream>
#include <thread>

#include "plap/eigen.hpp"
#include "plap/error.hpp"
#include "plap/weak_form.hpp"

namespace plap {

double energy(const GridFunction& u, const Problem& prob) {
  const WeakForm wf(u.grid(), prob.p, prob.c, prob.m, SourceKind::Power, prob.q);
  return wf.energy(u.values());
}

namespace {

SymTridiagonal interior(const SymTridiagonal& h) {
  const std::size_t n = h.diag.size();
  SymTridiagonal out;
  out.diag.assign(h.diag.begin() + 1, h.diag.end() - 1);
  out.off.assign(h.off.begin() + 1, h.off.begin() + static_cast<std::ptrdiff_t>(n - 2));
  return out;
}

}  // namespace

BetweenResult solve_between_detailed(const Problem& prob, const GridFunction& lower, const GridFunction& upper,
                                     const SolveOptions& opts) {
  const Grid& grid = lower.grid();
  const std::size_t n = grid.size();
  if (upper.size() != n) fail(ErrorCode::InvalidArgument, "bounds live on different grids");
  if (n < 3) fail(ErrorCode::InvalidArgument, "solve_between needs at least one interior node");
  const WeakForm wf(grid, prob.p, prob.c, prob.m, SourceKind::Power, prob.q);
  const std::vector<double>& mass = wf.hat_mass();

  std::vector<double> lo(lower.values().begin(), lower.values().end());
  std::vector<double> hi(upper.values().begin(), upper.values().end());
  lo.front() = hi.front() = lo.back() = hi.back() = 0.0;
  const double top = std::max(1.0, upper.max());
  for (std::size_t i = 0; i < n; ++i) {
    if (lo[i] > hi[i] + 1e-14 * top) fail(ErrorCode::InvalidArgument, "lower bound exceeds upper bound");
    lo[i] = std::min(lo[i], hi[i]);
  }
  auto clamp = [&](std::vector<double>& v) {
    for (std::size_t i = 0; i < n; ++i) v[i] = std::clamp(v[i], lo[i], hi[i]);
  };

  BetweenResult out;
  std::vector<double> u = hi;
  std::vector<double> trial(n), d(n - 2);
  double e = wf.energy(u);
  std::vector<double> grad = wf.gradient(u);

  auto fixed = [&](std::size_t i) { return lo[i] >= hi[i]; };
  auto at_bound = [&](const std::vector<double>& v, const std::vector<double>& g, std::size_t i) {
    return fixed(i) || (v[i] <= lo[i] && g[i] > 0.0) || (v[i] >= hi[i] && g[i] < 0.0);
  };
  auto bad_nodes = [&](const std::vector<double>& v, const std::vector<double>& g) {
    const std::vector<double> floor = wf.rounding_floor(v);
    std::vector<std::size_t> bad;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      if (!at_bound(v, g, i) && std::abs(g[i]) > opts.tol * mass[i] + 4.0 * floor[i]) bad.push_back(i);
    }
    return bad;
  };
  auto merit = [&](const std::vector<double>& v, const std::vector<double>& g) {
    double sum = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      if (!at_bound(v, g, i)) sum += g[i] * g[i] / mass[i];
    }
    return sum;
  };
  auto residual = [&](const std::vector<double>& v, const std::vector<double>& g) {
    double r = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      if (!at_bound(v, g, i)) r = std::max(r, std::abs(g[i]) / mass[i]);
    }
    return r;
  };

  std::vector<unsigned char> active(n, 0), secant(n - 1, 0);
  for (std::size_t it = 0;; ++it) {
    out.energy_history.push_back(e);
    if (bad_nodes(u, grad).empty()) {
      out.iterations = it;
      break;
    }
    if (it >= opts.max_iter) {
      std::ostringstream os;
      os << "solve_between did not converge in " << opts.max_iter << " iterations (residual " << residual(u, grad)
         << ")";
      fail(ErrorCode::SolverFailure, os.str());
    }

    // Epsilon-active set with diagonal scaling: a bound is active when the diagonal Newton step
    // would cross it.
    const std::vector<double> hd = wf.hessian(u, opts.delta, true).diag;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double step = std::abs(grad[i]) / std::max(hd[i], 1e-300);
      const double eps_i = std::min(step, 1e-3 * (hi[i] - lo[i]));
      active[i] = fixed(i) || (u[i] <= lo[i] + eps_i && grad[i] > 0.0) || (u[i] >= hi[i] - eps_i && grad[i] < 0.0);
    }

    auto direction = [&](bool guard) {
      std::fill(secant.begin(), secant.end(), 0);
      for (int pass = 0; pass < 4; ++pass) {
        SymTridiagonal h;
        std::vector<double> rhs(n - 2), x;
        bool ok = false;
        for (int attempt = 0; attempt < 8 && !ok; ++attempt) {
          h = interior(wf.hessian(u, opts.delta, attempt > 0, secant));
          double shift = 0.0;
          if (attempt > 1) {
            const double dmax = *std::max_element(h.diag.begin(), h.diag.end());
            shift = dmax * std::pow(10.0, attempt - 10);
          }
          for (std::size_t i = 1; i + 1 < n; ++i) {
            const std::size_t r = i - 1;
            if (active[i]) {
              h.diag[r] = 1.0;
              if (r > 0) h.off[r - 1] = 0.0;
              if (r < h.off.size()) h.off[r] = 0.0;
              rhs[r] = 0.0;
            } else {
              h.diag[r] += shift;
              rhs[r] = -grad[i];
            }
          }
          ok = solve_spd(h, rhs, x);
        }
        for (std::size_t i = 1; i + 1 < n; ++i) {
          const std::size_t r = i - 1;
          d[r] = ok && !active[i] ? x[r] : -grad[i] / mass[i];
        }
        if (!ok || !guard) break;
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
    };
    auto project = [&](double alpha) {
      for (std::size_t i = 1; i + 1 < n; ++i) trial[i] = u[i] + alpha * d[i - 1];
      trial.front() = trial.back() = 0.0;
      clamp(trial);
    };
    auto search = [&] {
      for (double alpha = 1.0; alpha >= 1e-12; alpha *= 0.5) {
        project(alpha);
        double pred = 0.0;
        for (std::size_t i = 1; i + 1 < n; ++i) {
          pred += active[i] ? grad[i] * (trial[i] - u[i]) : alpha * grad[i] * d[i - 1];
        }
        if (!(pred < 0.0)) return false;
        const double et = wf.energy(trial);
        if (et <= e + 1e-4 * pred) return et < e - 1e-14 * std::abs(e);
      }
      return false;
    };

    direction(prob.p < 2.0);
    std::vector<double> tgrad;
    if (search()) {
      tgrad = wf.gradient(trial);
    } else {
      const double m0 = merit(u, grad);
      bool ok = false;
      for (double alpha = 1.0; alpha >= 1e-9 && !ok; alpha *= 0.5) {
        project(alpha);
        tgrad = wf.gradient(trial);
        ok = merit(trial, tgrad) < (1.0 - 1e-4 * alpha) * m0;
      }
      if (!ok) {
        trial = u;
        tgrad = grad;
      }
      std::vector<std::size_t> block = ok ? std::vector<std::size_t>{} : bad_nodes(trial, tgrad);
      if (!block.empty()) {
        for (std::size_t i = block.front() > 3 ? block.front() - 2 : 1; i < std::min(block.back() + 3, n - 1); ++i) {
          if (!std::binary_search(block.begin(), block.end(), i)) {
            block.insert(std::lower_bound(block.begin(), block.end(), i), i);
          }
        }
        std::vector<double> relaxed = trial;
        for (int sweep = 0; sweep < 50; ++sweep) {
          relax_nodes(wf, relaxed, block, lo, hi);
          std::reverse(block.begin(), block.end());
        }
        std::vector<double> rgrad = wf.gradient(relaxed);
        if (merit(relaxed, rgrad) < merit(trial, tgrad)) {
          trial.swap(relaxed);
          tgrad.swap(rgrad);
          ok = true;
        }
      }
      if (!ok) {
        std::ostringstream os;
        os << "solve_between stagnated at residual " << residual(u, grad);
        fail(ErrorCode::SolverFailure, os.str());
      }
    }
    u.swap(trial);
    grad.swap(tgrad);
    e = wf.energy(u);
  }

  const std::vector<double> floor = wf.rounding_floor(u);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (fixed(i)) continue;
    const bool beyond = std::abs(grad[i]) > opts.tol * mass[i] + 4.0 * floor[i];
    if (u[i] <= lo[i] && grad[i] > 0.0 && beyond) out.active_lower.push_back(i);
    if (u[i] >= hi[i] && grad[i] < 0.0 && beyond) out.active_upper.push_back(i);
  }
  out.residual = residual(u, grad);
  out.u = GridFunction(grid, std::move(u));
  return out;
}

BetweenResult solve_between(const Problem& prob, const Certificate& sub, const Certificate& super, const Grid& grid,
                            const SolveOptions& opts) {
  for (const Certificate* c : {&sub, &super}) {
    if (!c->verified) fail(ErrorCode::InvalidCertificate, std::string(to_string(c->kind)) + " is not verified");
    if (!c->verified->passes) {
      fail(ErrorCode::InvalidCertificate, std::string(to_string(c->kind)) + " failed verification");
    }
  }
  auto on_grid = [&](const GridFunction& f) {
    const auto a = f.grid().nodes(), b = grid.nodes();
    if (a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin())) return f;
    return f.resampled(grid);
  };
  return solve_between_detailed(prob, on_grid(sub.u), on_grid(super.u), opts);
}

// ---------------------------------------------------------------------------

std::string_view to_string(Policy policy) noexcept {
  switch (policy) {
    case Policy::Auto: return "auto";
    case Policy::Thm1I: return "thm1_i";
    case Policy::Thm1II: return "thm1_ii";
    case Policy::Thm2I: return "thm2_i";
    case Policy::Thm2II: return "thm2_ii";
    case Policy::Cor: return "cor";
  }
  return "auto";
}

Policy parse_policy(std::string_view name) {
  for (Policy p : {Policy::Auto, Policy::Thm1I, Policy::Thm1II, Policy::Thm2I, Policy::Thm2II, Policy::Cor}) {
    if (to_string(p) == name) return p;
  }
  fail(ErrorCode::InvalidArgument, "unknown policy '" + std::string(name) + "'");
}

std::vector<Theorem> candidates(Policy policy, const std::vector<ConditionReport>& conditions, const Problem& prob) {
  std::vector<Theorem> order;
  switch (policy) {
    case Policy::Auto:
      if (c_sup(prob) == 0.0) order.push_back(Theorem::Cor);
      order.insert(order.end(), {Theorem::Thm2I, Theorem::Thm2II, Theorem::Thm1I, Theorem::Thm1II});
      break;
    case Policy::Thm1I: order = {Theorem::Thm1I}; break;
    case Policy::Thm1II: order = {Theorem::Thm1II}; break;
    case Policy::Thm2I: order = {Theorem::Thm2I}; break;
    case Policy::Thm2II: order = {Theorem::Thm2II}; break;
    case Policy::Cor: order = {Theorem::Cor}; break;
  }
  std::vector<Theorem> out;
  for (Theorem t : order) {
    for (const auto& r : conditions) {
      if (r.name == t && r.holds) out.push_back(t);
    }
  }
  return out;
}

SolutionReport solve_full(const Problem& prob, const Grid& grid, Policy policy, const SolveOptions& opts) {
  prob.validate();
  const EigenPair eig = principal_eigenvalue(prob, grid);
  SolutionReport rep;
  rep.lambda1 = eig.lambda1;
  rep.conditions = check_all(prob, eig.lambda1);
  const std::vector<Theorem> cands = candidates(policy, rep.conditions, prob);
  if (cands.empty()) {
    std::ostringstream os;
    os << "no sufficient condition holds under policy " << to_string(policy) << " (margins:";
    for (const auto& r : rep.conditions) os << ' ' << to_string(r.name) << '=' << r.margin;
    os << ')';
    fail(ErrorCode::NoCertificate, os.str());
  }
  for (Theorem t : cands) {
    try {
      Certificate sub = build_subsolution(prob, t, grid, eig);
      const Grid g2 = sub.u.grid();
      Certificate super = build_supersolution(prob, g2);
      const bool ordered = enforce_order(sub, super);
      const WeakCheck& vs = verify_certificate(sub, prob, opts.sub_tol);
      const WeakCheck& vw = verify_certificate(super, prob, opts.super_tol);
      if (!ordered || !vs.passes || !vw.passes) {
        std::ostringstream os;
        os << to_string(t) << ": ";
        if (!ordered) os << "could not order sub <= super";
        else if (!vs.passes) os << "subsolution check failed (margin " << vs.margin << ")";
        else os << "supersolution check failed (margin " << vw.margin << ")";
        rep.notes.push_back(os.str());
        continue;
      }
      const BetweenResult r = solve_between(prob, sub, super, g2, opts);
      std::vector<unsigned char> mask(g2.size(), 0);
      for (std::size_t i : r.active_lower) mask[i] = 1;
      for (std::size_t i : r.active_upper) mask[i] = 1;
      rep.active_nodes = r.active_lower;
      rep.active_nodes.insert(rep.active_nodes.end(), r.active_upper.begin(), r.active_upper.end());
      std::sort(rep.active_nodes.begin(), rep.active_nodes.end());
      rep.theorem = t;
      rep.u = r.u;
      rep.iterations = r.iterations;
      rep.residual = solution_residual(r.u, prob, mask);
      rep.positivity = positivity_profile(r.u);
      rep.min_interior = rep.positivity.min_interior;
      rep.ordering_ok = ordered;
      rep.sub = std::move(sub);
      rep.super = std::move(super);
      rep.success = rep.residual <= opts.residual_tol && rep.min_interior > 0.0 && !rep.positivity.has_dead_core();
      return rep;
    } catch (const Error& e) {
      switch (e.code()) {
        case ErrorCode::TauTooLarge:
        case ErrorCode::GlueFailure:
        case ErrorCode::EpsTooLarge:
        case ErrorCode::NoCertificate:
        case ErrorCode::InvalidCertificate:
          rep.notes.push_back(std::string(to_string(t)) + ": " + e.what());
          break;
        default: throw;
      }
    }
  }
  std::string msg = "every candidate failed";
  for (const auto& s : rep.notes) msg += "; " + s;
  fail(ErrorCode::NoCertificate, msg);
}

// ---------------------------------------------------------------------------

std::vector<SweepRow> sweep(const Problem& base, const SweepSpec& spec) {
  const std::vector<double> ps = spec.p.empty() ? std::vector<double>{base.p} : spec.p;
  const std::vector<double> qs = spec.q.empty() ? std::vector<double>{base.q} : spec.q;
  const std::vector<double> mus = spec.mu.empty() ? std::vector<double>{1.0} : spec.mu;
  std::vector<SweepRow> rows;
  for (double p : ps) {
    for (double q : qs) {
      for (double mu : mus) {
        SweepRow r;
        r.p = p;
        r.q = q;
        r.mu = mu;
        rows.push_back(std::move(r));
      }
    }
  }
  auto run = [&](SweepRow& row) {
    try {
      Problem prob = base;
      prob.p = row.p;
      prob.q = row.q;
      prob.m = base.m.sign_scaled(1.0, row.mu);
      prob.validate();
      const Grid grid = default_grid(prob, spec.cells);
      const EigenPair eig = principal_eigenvalue(prob, grid);
      row.lambda1 = eig.lambda1;
      row.conditions = check_all(prob, eig.lambda1);
      if (!spec.solve) return;
      const SolutionReport rep = solve_full(prob, grid, spec.policy, spec.opts);
      row.solved = rep.success;
      row.theorem = rep.theorem ? std::string(to_string(*rep.theorem)) : "";
      row.min_interior = rep.min_interior;
      row.residual = rep.residual;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
  };
  std::size_t jobs = spec.jobs == 0 ? std::max(1u, std::thread::hardware_concurrency()) : spec.jobs;
  jobs = std::min(jobs, rows.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) run(rows[i]);
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return rows;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  std::ostringstream buf;
  buf.imbue(std::locale::classic());
  buf.precision(17);
  buf << "p,q,mu,lambda1";
  for (Theorem t : kAllTheorems) buf << ',' << to_string(t);
  for (Theorem t : kAllTheorems) buf << ",margin_" << to_string(t);
  buf << ",solved,theorem,min_interior,residual,error\n";
  for (const auto& r : rows) {
    buf << r.p << ',' << r.q << ',' << r.mu << ',' << r.lambda1;
    for (Theorem t : kAllTheorems) {
      bool holds = false;
      for (const auto& c : r.conditions) holds = holds || (c.name == t && c.holds);
      buf << ',' << (holds ? 1 : 0);
    }
    for (Theorem t : kAllTheorems) {
      buf << ',';
      for (const auto& c : r.conditions) {
        if (c.name == t) buf << c.margin;
      }
    }
    std::string err = r.error;
    std::replace(err.begin(), err.end(), '"', '\'');
    buf << ',' << (r.solved ? 1 : 0) << ',' << r.theorem << ',' << r.min_interior << ',' << r.residual << ",\"" << err
        << "\"\n";
  }
  os << buf.str();
}

}  // namespace plap
