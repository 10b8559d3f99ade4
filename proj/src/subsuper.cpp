#include "plap/subsuper.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "plap/bvp.hpp"
#include "plap/error.hpp"

namespace plap {

std::string_view to_string(CertificateKind kind) noexcept {
  return kind == CertificateKind::Subsolution ? "subsolution" : "supersolution";
}

namespace {

Interval side_support(const Problem& prob, Side side) {
  return side == Side::Left ? Interval{prob.domain.a, prob.x1()} : Interval{prob.x0(), prob.domain.b};
}

// Distance from the outer endpoint of the side.
double outer_distance(const Problem& prob, Side side, double x) {
  return side == Side::Left ? std::max(0.0, x - prob.domain.a) : std::max(0.0, prob.domain.b - x);
}

struct Hyperbolic {
  double cn;
  double C;
  double amp;
  double lambda;
};

Hyperbolic hyperbolic(const Problem& prob, double tau, double eps, const char* what) {
  const double cn = c_sup(prob);
  if (!(cn > 0.0)) fail(ErrorCode::InvalidArgument, std::string(what) + " profile needs c != 0");
  if (!(tau > 0.0)) fail(ErrorCode::InvalidArgument, "tau must be positive");
  const double C = c_pq(prob.p, prob.q);
  const double n = neg_sup(prob) + eps;
  return {cn, C, std::pow(tau * n / cn, 1.0 / prob.p), std::pow(cn / C, 1.0 / prob.p)};
}

GridFunction sample_side(const Profile& prof, const Grid& grid) {
  const Grid g = grid.restricted(prof.support);
  GridFunction out = GridFunction::sample(g, prof.value);
  if (out.max() > 1.0 + 1e-12) {
    std::ostringstream os;
    os.precision(10);
    os << "boundary piece reaches " << out.max() << " > 1";
    fail(ErrorCode::TauTooLarge, os.str());
  }
  return out;
}

}  // namespace

Profile power_profile(const Problem& prob, double tau, double eps, PowerVariant variant, Side side) {
  if (!(tau > 0.0)) fail(ErrorCode::InvalidArgument, "tau must be positive");
  if (!(eps >= 0.0)) fail(ErrorCode::InvalidArgument, "eps must be nonnegative");
  const double p = prob.p, d = p - 1.0 - prob.q;
  Profile out;
  out.side = side;
  out.support = side_support(prob, side);
  if (variant == PowerVariant::A) {
    const double gamma = gamma_factor(prob.domain, prob.window);
    out.k = 1.0 / d;
    out.sigma = tau * std::pow(gamma, p - 2.0) / ((p - 1.0) * std::pow(out.k, p - 1.0));
  } else {
    out.k = (p - 1.0) / d;
    out.sigma = std::pow(tau / (p - 1.0), 1.0 / (p - 1.0)) / out.k;
  }
  const Weight cumulative = side == Side::Left ? negative_mass_left(prob.m, eps).cumulative_from_left()
                                               : negative_mass_right(prob.m, eps).cumulative_to_right();
  const Interval sup = out.support;
  out.value = [cumulative, sup, k = out.k, sigma = out.sigma](double x) {
    x = std::clamp(x, sup.a, sup.b);
    return std::pow(sigma * std::max(0.0, cumulative(x)), k);
  };
  return out;
}

Profile sinh_profile(const Problem& prob, double tau, double eps, Side side) {
  if (prob.p < 2.0) fail(ErrorCode::InvalidExponent, "sinh profile needs p >= 2");
  const Hyperbolic h = hyperbolic(prob, tau, eps, "sinh");
  Profile out;
  out.side = side;
  out.support = side_support(prob, side);
  out.k = prob.p / (prob.p - 1.0 - prob.q);
  out.sigma = h.amp;
  out.value = [h, k = out.k, sup = out.support, side, prob](double x) {
    x = std::clamp(x, sup.a, sup.b);
    return std::pow(h.amp * std::sinh(h.lambda * outer_distance(prob, side, x)), k);
  };
  return out;
}

Profile exp_profile(const Problem& prob, double tau, double eps, Side side) {
  const Hyperbolic h = hyperbolic(prob, tau, eps, "exp");
  Profile out;
  out.side = side;
  out.support = side_support(prob, side);
  out.k = prob.p / (prob.p - 1.0 - prob.q);
  out.sigma = h.amp;
  out.value = [h, k = out.k, sup = out.support, side, prob](double x) {
    x = std::clamp(x, sup.a, sup.b);
    return std::pow(h.amp * std::expm1(h.lambda * outer_distance(prob, side, x)), k);
  };
  return out;
}

Profile linear_profile(const Problem& prob, double tau, double eps, Side side) {
  if (!(tau > 0.0)) fail(ErrorCode::InvalidArgument, "tau must be positive");
  const double C = c_pq(prob.p, prob.q);
  Profile out;
  out.side = side;
  out.support = side_support(prob, side);
  out.k = prob.p / (prob.p - 1.0 - prob.q);
  out.sigma = std::pow(tau * (neg_sup(prob) + eps) / C, 1.0 / prob.p);
  out.value = [sigma = out.sigma, k = out.k, sup = out.support, side, prob](double x) {
    x = std::clamp(x, sup.a, sup.b);
    return std::pow(sigma * outer_distance(prob, side, x), k);
  };
  return out;
}

Profile side_profile(Theorem which, const Problem& prob, double tau, double eps, Side side) {
  switch (which) {
    case Theorem::Thm1I: return power_profile(prob, tau, eps, PowerVariant::A, side);
    case Theorem::Thm1II: return power_profile(prob, tau, eps, PowerVariant::B, side);
    case Theorem::Thm2I: return sinh_profile(prob, tau, eps, side);
    case Theorem::Thm2II: return exp_profile(prob, tau, eps, side);
    case Theorem::Cor: return linear_profile(prob, tau, eps, side);
  }
  return linear_profile(prob, tau, eps, side);
}

GridFunction build_u1_power(const Problem& prob, double tau, double eps, PowerVariant variant, const Grid& grid) {
  return sample_side(power_profile(prob, tau, eps, variant, Side::Left), grid);
}

GridFunction build_u3_power(const Problem& prob, double tau, double eps, PowerVariant variant, const Grid& grid) {
  return sample_side(power_profile(prob, tau, eps, variant, Side::Right), grid);
}

GridFunction build_u1_sinh(const Problem& prob, double tau, const Grid& grid, double eps) {
  const Profile prof = sinh_profile(prob, tau, eps, Side::Left);
  const Hyperbolic h = hyperbolic(prob, tau, eps, "sinh");
  const double p = prob.p;
  const double target = std::pow(tau * (neg_sup(prob) + eps), 2.0 / p);
  const Grid g = grid.restricted(prof.support);
  for (double x : g.nodes()) {
    const double t = h.lambda * (x - prob.domain.a);
    const double f = h.amp * std::sinh(t), df = h.amp * h.lambda * std::cosh(t);
    const double lead = std::pow(std::pow(h.C, 1.0 / p) * df, 2.0);
    const double ident = lead - std::pow(std::pow(h.cn, 1.0 / p) * f, 2.0);
    if (std::abs(ident - target) > 1e-10 * std::max(target, lead)) {
      fail(ErrorCode::InvalidCertificate, "sinh profile identity violated");
    }
    if (f > 1.0 + 1e-12) fail(ErrorCode::TauTooLarge, "sinh profile exceeds 1");
  }
  return sample_side(prof, grid);
}

GridFunction build_u1_exp(const Problem& prob, double tau, const Grid& grid, double eps) {
  const Profile prof = exp_profile(prob, tau, eps, Side::Left);
  if (std::pow(prof.sup(), 1.0 / prof.k) > 1.0 + 1e-12) fail(ErrorCode::TauTooLarge, "exp profile exceeds 1");
  return sample_side(prof, grid);
}

// ---------------------------------------------------------------------------

namespace {

constexpr double kSlopeTol = 1e-6;

// Largest x in [lo, hi] with f(x) >= 0, given f(lo) >= 0 > f(hi).
double bisect(const std::function<double(double)>& f, double lo, double hi) {
  for (int it = 0; it < 200 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(hi));
       ++it) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) >= 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

bool slopes_ok(double left, double right) {
  return left <= right + kSlopeTol * std::max(std::abs(left), std::abs(right));
}

}  // namespace

GlueResult glue(const GluePieces& pc, const Grid& grid) {
  if (!pc.u2) fail(ErrorCode::InvalidArgument, "glue needs the window piece");
  const double a = pc.domain.a, b = pc.domain.b, x0 = pc.window.a, x1 = pc.window.b;
  if (pc.u1 && !(x0 > a)) fail(ErrorCode::InvalidArgument, "left piece given but the window starts at a");
  if (pc.u3 && !(x1 < b)) fail(ErrorCode::InvalidArgument, "right piece given but the window ends at b");

  const Grid scan = grid.restricted(pc.window);
  const std::size_t ns = scan.size();
  std::vector<double> u2v(ns);
  for (std::size_t i = 0; i < ns; ++i) u2v[i] = pc.u2(scan[i]);
  const std::size_t im = static_cast<std::size_t>(std::max_element(u2v.begin(), u2v.end()) - u2v.begin());

  double xl = x0, xr = x1;
  if (pc.u1) {
    auto d = [&](double x) { return pc.u1(x) - pc.u2(x); };
    bool found = false;
    for (std::size_t j = im + 1; j-- > 0 && !found;) {
      if (d(scan[j]) < 0.0) continue;
      if (j < im && d(scan[j + 1]) >= 0.0) continue;  // not a crossing: keep going left
      const double x = j == im ? scan[j] : bisect(d, scan[j], scan[j + 1]);
      double hs = 0.25 * (j + 1 < ns ? scan[j + 1] - scan[j] : scan[j] - scan[j - 1]);
      hs = std::min(hs, x - a);
      const double s1 = (pc.u1(x) - pc.u1(x - hs)) / hs;
      const double s2 = (pc.u2(x + hs) - pc.u2(x)) / hs;
      if (slopes_ok(s1, s2)) {
        xl = x;
        found = true;
      }
    }
    if (!found) fail(ErrorCode::GlueFailure, "no left junction with u1' <= u2'; retry with another tau or eps");
  }
  if (pc.u3) {
    auto d = [&](double x) { return pc.u3(x) - pc.u2(x); };
    auto dn = [&](double x) { return d(-x); };
    bool found = false;
    for (std::size_t j = im; j < ns && !found; ++j) {
      if (d(scan[j]) < 0.0) continue;
      if (j > im && d(scan[j - 1]) >= 0.0) continue;
      const double x = j == im ? scan[j] : -bisect(dn, -scan[j], -scan[j - 1]);
      double hs = 0.25 * (j > 0 ? scan[j] - scan[j - 1] : scan[j + 1] - scan[j]);
      hs = std::min(hs, b - x);
      const double s2 = (pc.u2(x) - pc.u2(x - hs)) / hs;
      const double s3 = (pc.u3(x + hs) - pc.u3(x)) / hs;
      if (slopes_ok(s2, s3)) {
        xr = x;
        found = true;
      }
    }
    if (!found) fail(ErrorCode::GlueFailure, "no right junction with u2' <= u3'; retry with another tau or eps");
  }
  if (!(xl < xr)) fail(ErrorCode::GlueFailure, "junctions out of order");

  const double pts[] = {xl, xr};
  const Grid out_grid = grid.with_points(pts);
  if (const auto i = out_grid.find_node(xl); i >= 0) xl = out_grid[static_cast<std::size_t>(i)];
  if (const auto i = out_grid.find_node(xr); i >= 0) xr = out_grid[static_cast<std::size_t>(i)];
  std::vector<double> v(out_grid.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double x = out_grid[i];
    if (x <= xl) {
      v[i] = pc.u1 ? pc.u1(x) : 0.0;
    } else if (x >= xr) {
      v[i] = pc.u3 ? pc.u3(x) : 0.0;
    } else {
      v[i] = std::clamp(pc.u2(x), 0.0, 1.0);
    }
  }
  v.front() = 0.0;
  v.back() = 0.0;
  return {GridFunction(out_grid, std::move(v)), xl, xr};
}

GlueResult glue(const std::optional<GridFunction>& u1, const GridFunction& u2, const std::optional<GridFunction>& u3,
                Interval domain) {
  std::vector<double> nodes(u2.grid().nodes().begin(), u2.grid().nodes().end());
  if (u1) nodes.insert(nodes.end(), u1->grid().nodes().begin(), u1->grid().nodes().end());
  if (u3) nodes.insert(nodes.end(), u3->grid().nodes().begin(), u3->grid().nodes().end());
  nodes.push_back(domain.a);
  nodes.push_back(domain.b);
  const Grid grid(merge_points(std::move(nodes), domain.length()));
  auto inside = [](const GridFunction& f) {
    return [&f](double x) {
      const Interval s = f.grid().interval();
      return s.contains(x) ? f(x) : 0.0;
    };
  };
  GluePieces pc;
  pc.domain = domain;
  pc.window = u2.grid().interval();
  pc.u2 = inside(u2);
  if (u1) pc.u1 = inside(*u1);
  if (u3) pc.u3 = inside(*u3);
  return glue(pc, grid);
}

double rescale_factor(double tau_effective, const Problem& prob) {
  if (!(tau_effective > 0.0)) fail(ErrorCode::InvalidArgument, "tau_effective must be positive");
  return std::pow(tau_effective, -1.0 / (prob.p - 1.0 - prob.q));
}

GridFunction rescale_certificate(const GridFunction& u, double tau_effective, const Problem& prob) {
  return u.scaled(rescale_factor(tau_effective, prob));
}

// ---------------------------------------------------------------------------

namespace {

std::string family_name(Theorem which) {
  switch (which) {
    case Theorem::Thm1I: return "power-A";
    case Theorem::Thm1II: return "power-B";
    case Theorem::Thm2I: return "sinh";
    case Theorem::Thm2II: return "exp";
    case Theorem::Cor: return "linear";
  }
  return "linear";
}

double m_eps(const Problem& prob, double eps, bool has_left, bool has_right) {
  double out = 0.0;
  if (has_left) out = std::max(out, negative_mass_left(prob.m, eps)(prob.x1()));
  if (has_right) out = std::max(out, negative_mass_right(prob.m, eps)(prob.x0()));
  return out;
}

}  // namespace

Certificate build_subsolution(const Problem& prob, Theorem which, const Grid& grid, const EigenPair& eig) {
  const ConditionReport rep = check(which, prob, eig.lambda1);
  if (!rep.holds) {
    fail(ErrorCode::NoCertificate, std::string(to_string(which)) + " does not hold: " + rep.reason);
  }
  const bool has_left = prob.x0() > prob.domain.a;
  const bool has_right = prob.x1() < prob.domain.b;

  Certificate cert;
  cert.kind = CertificateKind::Subsolution;
  Provenance& pv = cert.construction;
  pv.method = std::string(to_string(which));
  pv.family = has_left || has_right ? family_name(which) : "eigenfunction";
  pv.lambda1 = eig.lambda1;
  pv.has_left = has_left;
  pv.has_right = has_right;

  std::optional<Error> last;
  double eps = initial_eps(prob);
  for (int halving = 0; halving <= kEpsHalvings; ++halving, eps *= 0.5) {
    TauInterval ti;
    try {
      ti = tau_interval(which, prob, eig.lambda1, eps);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::EpsTooLarge) throw;
      last = e;
      continue;
    }
    const double taus[] = {std::sqrt(ti.lo * ti.hi), std::min(ti.hi, ti.lo * 1.0001), std::max(ti.lo, ti.hi * 0.9999)};
    for (double tau : taus) {
      ++pv.attempts;
      try {
        GluePieces pc;
        pc.domain = prob.domain;
        pc.window = prob.window;
        pc.u2 = [&eig](double x) { return std::clamp(eig.value(x), 0.0, 1.0); };
        std::optional<Profile> left, right;
        if (has_left) left = side_profile(which, prob, tau, eps, Side::Left);
        if (has_right) right = side_profile(which, prob, tau, eps, Side::Right);
        for (const auto* prof : {&left, &right}) {
          if (*prof && (*prof)->sup() > 1.0 + 1e-12) {
            std::ostringstream os;
            os.precision(10);
            os << "boundary piece reaches " << (*prof)->sup() << " > 1";
            fail(ErrorCode::TauTooLarge, os.str());
          }
        }
        if (left) pc.u1 = left->value;
        if (right) pc.u3 = right->value;
        const GlueResult g = glue(pc, grid);

        double tau_eff = tau;
        if (which == Theorem::Thm1II) {
          const double me = m_eps(prob, eps, has_left, has_right);
          if (me > 0.0) tau_eff = tau * std::pow(me, prob.p - 2.0);
        }
        pv.tau = tau;
        pv.tau_lo = ti.lo;
        pv.tau_hi = ti.hi;
        pv.tau_capped = ti.capped;
        pv.tau_effective = tau_eff;
        pv.eps = eps;
        const Profile* shape = left ? &*left : right ? &*right : nullptr;
        pv.k = shape ? shape->k : 1.0;
        pv.sigma = shape ? shape->sigma : 0.0;
        pv.x0_junction = g.x0_junction;
        pv.x1_junction = g.x1_junction;
        pv.scale = rescale_factor(tau_eff, prob);
        cert.u = g.u.scaled(pv.scale);
        return cert;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::TauTooLarge && e.code() != ErrorCode::GlueFailure) throw;
        last = e;
      }
    }
  }
  if (last) throw *last;
  fail(ErrorCode::NoCertificate, "subsolution construction failed");
}

Certificate build_subsolution(const Problem& prob, Theorem which, const Grid& grid) {
  return build_subsolution(prob, which, grid, principal_eigenvalue(prob, grid));
}

Certificate build_supersolution(const Problem& prob, const Grid& grid) {
  const Weight mplus = prob.m.positive_part();
  if (mplus.is_zero()) fail(ErrorCode::NoSupersolution, "m+ vanishes identically; no positive solution exists");
  const GridFunction v = solve_g(prob.p, prob.c, mplus, grid);
  const double top = v.max();
  if (v.min() < -1e-10 * std::max(1.0, top)) {
    fail(ErrorCode::NoSupersolution, "auxiliary problem with g = m+ has no nonnegative solution");
  }
  Certificate cert;
  cert.kind = CertificateKind::Supersolution;
  Provenance& pv = cert.construction;
  pv.method = "k(v+1)";
  pv.family = "supersolution";
  pv.v_sup = top;
  pv.k_min = std::pow(top + 1.0, prob.q / (prob.p - 1.0 - prob.q));
  pv.k = pv.k_min;
  std::vector<double> w(v.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = pv.k * (std::max(v[i], 0.0) + 1.0);
  cert.u = GridFunction(grid, std::move(w));
  return cert;
}

bool enforce_order(const Certificate& sub, Certificate& super) {
  if (sub.u.size() != super.u.size()) fail(ErrorCode::InvalidArgument, "sub and super live on different grids");
  auto ordered = [&] {
    for (std::size_t i = 0; i < sub.u.size(); ++i) {
      if (sub.u[i] > super.u[i]) return false;
    }
    return true;
  };
  for (int it = 0; it < 64; ++it) {
    if (ordered()) return true;
    super.u = super.u.scaled(2.0);
    super.construction.order_factor *= 2.0;
    super.construction.k *= 2.0;
  }
  return ordered();
}

const WeakCheck& verify_certificate(Certificate& cert, const Problem& prob, double tol) {
  cert.verified = cert.kind == CertificateKind::Subsolution ? check_weak_subsolution(cert.u, prob, tol)
                                                           : check_weak_supersolution(cert.u, prob, tol);
  return *cert.verified;
}

}  // namespace plap
