#include "plap/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "plap/error.hpp"

namespace plap {

std::string_view to_string(Theorem t) noexcept {
  switch (t) {
    case Theorem::Thm1I: return "thm1_i";
    case Theorem::Thm1II: return "thm1_ii";
    case Theorem::Thm2I: return "thm2_i";
    case Theorem::Thm2II: return "thm2_ii";
    case Theorem::Cor: return "cor";
  }
  return "cor";
}

Theorem parse_theorem(std::string_view name) {
  for (Theorem t : kAllTheorems) {
    if (to_string(t) == name) return t;
  }
  fail(ErrorCode::InvalidArgument, "unknown theorem '" + std::string(name) + "'");
}

double gamma_factor(Interval domain, Interval window) { return std::max(window.b - domain.a, domain.b - window.a); }

double m_script(double p, const Weight& m, Interval domain, double x0, double x1) {
  if (x1 < x0 || x0 < domain.a || x1 > domain.b) fail(ErrorCode::RangeError, "window outside the domain");
  const Weight left = negative_mass_left(m, 0.0);
  const Weight right = negative_mass_right(m, 0.0);
  auto term = [p](double mass, double integral) {
    if (mass <= 0.0) return 0.0;
    return std::pow(mass, 2.0 - p) * std::pow(integral, p - 1.0);
  };
  const double lterm = term(left(x1), left.cumulative_from_left()(x1));
  const double rterm = term(right(x0), right.cumulative_to_right()(x0));
  return std::max(lterm, rterm);
}

double c_pq(double p, double q) {
  if (!(p > 1.0)) fail(ErrorCode::InvalidExponent, "C_{p,q} needs p > 1");
  if (!(q > 0.0 && q < p - 1.0)) fail(ErrorCode::InvalidExponent, "C_{p,q} needs 0 < q < p - 1");
  const double d = p - 1.0 - q;
  return std::pow(p / d, p - 1.0) * (p - 1.0) * (q + 1.0) / d;
}

double neg_sup(const Problem& prob) { return std::max(0.0, -prob.m.ess_inf()); }
double c_sup(const Problem& prob) { return std::max(0.0, prob.c.ess_sup()); }

namespace {

ConditionReport base_report(Theorem t, const Problem& prob, double lambda1) {
  ConditionReport r;
  r.name = t;
  r.lambda1 = lambda1;
  r.gamma = gamma_factor(prob.domain, prob.window);
  return r;
}

void finish(ConditionReport& r, bool main_ok, bool extra_ok) {
  r.margin = r.rhs - r.lhs;
  r.holds = r.applicable && main_ok && extra_ok;
  if (r.applicable && r.reason.empty()) {
    if (!main_ok) r.reason = "main inequality fails";
    else if (!extra_ok) r.reason = "coefficient bound on c fails";
    else r.reason = "holds";
  }
}

// Left side of the sinh (exp when use_exp) condition; tends to the corollary's left side as |c| -> 0.
double profile_lhs(double p, double q, double gamma, double mneg, double cnorm, bool use_exp) {
  const double C = c_pq(p, q);
  if (cnorm == 0.0) return mneg * std::pow(gamma, p) / C;
  const double t = std::pow(cnorm / C, 1.0 / p) * gamma;
  const double shape = use_exp ? std::expm1(t) : std::sinh(t);
  return (mneg / cnorm) * std::pow(shape, p);
}

}  // namespace

ConditionReport check_thm1_i(const Problem& prob, double lambda1) {
  const double p = prob.p, q = prob.q;
  ConditionReport r = base_report(Theorem::Thm1I, prob, lambda1);
  r.strict = true;
  r.applicable = p >= 2.0 && q > p - 2.0 && q < p - 1.0;
  if (!r.applicable) r.reason = "requires p >= 2 and p - 2 < q < p - 1";
  const double d = p - 1.0 - q;
  const double m2 = m_script(2.0, prob.m, prob.domain, prob.x0(), prob.x1());
  r.lhs = std::pow(r.gamma, p - 2.0) * m2;
  r.rhs = (p - 1.0) / std::pow(d, p - 1.0) / lambda1;
  const double c_lhs = std::pow(r.gamma, p) * c_sup(prob);
  const double c_rhs = (2.0 - p + q) * (p - 1.0) / std::pow(d, p);
  r.auxiliary = {{"M_2", m2}, {"c_lhs", c_lhs}, {"c_rhs", c_rhs}, {"c_margin", c_rhs - c_lhs}};
  finish(r, r.lhs < r.rhs, c_lhs <= c_rhs);
  return r;
}

ConditionReport check_thm1_ii(const Problem& prob, double lambda1) {
  const double p = prob.p, q = prob.q;
  ConditionReport r = base_report(Theorem::Thm1II, prob, lambda1);
  r.strict = true;
  r.applicable = p > 1.0 && p <= 2.0;
  if (!r.applicable) r.reason = "requires 1 < p <= 2";
  const double d = p - 1.0 - q;
  const double mp = m_script(p, prob.m, prob.domain, prob.x0(), prob.x1());
  r.lhs = mp;
  r.rhs = std::pow(p - 1.0, p) / std::pow(d, p - 1.0) / lambda1;
  const double c_lhs = std::pow(r.gamma, p) * c_sup(prob);
  const double c_rhs = std::pow((p - 1.0) / d, p) * q;
  r.auxiliary = {{"M_p", mp}, {"c_lhs", c_lhs}, {"c_rhs", c_rhs}, {"c_margin", c_rhs - c_lhs}};
  finish(r, r.lhs < r.rhs, c_lhs <= c_rhs);
  return r;
}

namespace {

ConditionReport check_profile(Theorem t, const Problem& prob, double lambda1) {
  const double p = prob.p, q = prob.q;
  ConditionReport r = base_report(t, prob, lambda1);
  const double cn = c_sup(prob);
  const double mneg = neg_sup(prob);
  const bool use_exp = t == Theorem::Thm2II;
  if (t == Theorem::Cor) {
    r.applicable = cn == 0.0;
    if (!r.applicable) r.reason = "requires c == 0";
    r.lhs = profile_lhs(p, q, r.gamma, mneg, 0.0, false);
  } else {
    r.applicable = cn > 0.0 && (use_exp || p >= 2.0);
    if (cn == 0.0) r.reason = "requires c != 0 (use cor)";
    else if (!r.applicable) r.reason = "requires p >= 2";
    r.lhs = profile_lhs(p, q, r.gamma, mneg, cn, use_exp);
  }
  r.rhs = 1.0 / lambda1;
  r.auxiliary = {{"C_pq", c_pq(p, q)}, {"m_neg_sup", mneg}, {"c_sup", cn}};
  finish(r, r.lhs <= r.rhs, true);
  return r;
}

}  // namespace

ConditionReport check_thm2_i(const Problem& prob, double lambda1) { return check_profile(Theorem::Thm2I, prob, lambda1); }
ConditionReport check_thm2_ii(const Problem& prob, double lambda1) { return check_profile(Theorem::Thm2II, prob, lambda1); }
ConditionReport check_cor(const Problem& prob, double lambda1) { return check_profile(Theorem::Cor, prob, lambda1); }

ConditionReport check(Theorem which, const Problem& prob, double lambda1) {
  switch (which) {
    case Theorem::Thm1I: return check_thm1_i(prob, lambda1);
    case Theorem::Thm1II: return check_thm1_ii(prob, lambda1);
    case Theorem::Thm2I: return check_thm2_i(prob, lambda1);
    case Theorem::Thm2II: return check_thm2_ii(prob, lambda1);
    case Theorem::Cor: return check_cor(prob, lambda1);
  }
  return check_cor(prob, lambda1);
}

std::vector<ConditionReport> check_all(const Problem& prob, double lambda1) {
  std::vector<ConditionReport> out;
  for (Theorem t : kAllTheorems) out.push_back(check(t, prob, lambda1));
  return out;
}

// ---------------------------------------------------------------------------

TauInterval tau_interval(Theorem which, const Problem& prob, double lambda1, double eps) {
  if (!(eps >= 0.0)) fail(ErrorCode::InvalidArgument, "eps must be nonnegative");
  const double p = prob.p, q = prob.q, d = p - 1.0 - q;
  const double gamma = gamma_factor(prob.domain, prob.window);
  const bool has_left = prob.x0() > prob.domain.a;
  const bool has_right = prob.x1() < prob.domain.b;
  const double inf = std::numeric_limits<double>::infinity();

  TauInterval out;
  out.eps = eps;
  out.lo = lambda1;
  double inv_hi = 0.0;  // lower bound on 1/tau

  if (which == Theorem::Thm1I || which == Theorem::Thm1II) {
    const Weight ml = negative_mass_left(prob.m, eps);
    const Weight mr = negative_mass_right(prob.m, eps);
    const double fl = has_left ? ml.cumulative_from_left()(prob.x1()) : 0.0;
    const double fr = has_right ? mr.cumulative_to_right()(prob.x0()) : 0.0;
    if (which == Theorem::Thm1I) {
      inv_hi = std::pow(gamma, p - 2.0) * std::pow(d, p - 1.0) / (p - 1.0) * std::max(fl, fr);
    } else {
      const double k = std::pow(d, p - 1.0) / std::pow(p - 1.0, p);
      if (has_left) inv_hi = std::max(inv_hi, k * std::pow(fl, p - 1.0));
      if (has_right) inv_hi = std::max(inv_hi, k * std::pow(fr, p - 1.0));
      double m_eps = 0.0;
      if (has_left) m_eps = std::max(m_eps, ml(prob.x1()));
      if (has_right) m_eps = std::max(m_eps, mr(prob.x0()));
      if (m_eps > 0.0) out.lo = lambda1 * std::pow(m_eps, 2.0 - p);
    }
  } else {
    const double n = neg_sup(prob) + eps;
    const double cn = which == Theorem::Cor ? 0.0 : c_sup(prob);
    inv_hi = profile_lhs(p, q, gamma, n, cn, which == Theorem::Thm2II);
  }

  double hi = inv_hi > 0.0 ? 1.0 / inv_hi : inf;
  const double cap = kTauCap * lambda1;
  if (hi > cap) {
    hi = cap;
    out.capped = true;
  }
  out.hi = hi;
  if (!(out.lo <= out.hi)) {
    std::ostringstream os;
    os.precision(10);
    os << to_string(which) << ": empty tau range [" << out.lo << ", " << out.hi << "] at eps = " << eps;
    fail(ErrorCode::EpsTooLarge, os.str());
  }
  return out;
}

double initial_eps(const Problem& prob) {
  const Interval d = prob.domain;
  const double abs_mass = prob.m.positive_part().integral(d.a, d.b) + prob.m.negative_part().integral(d.a, d.b);
  return 1e-3 * (1.0 + abs_mass);
}

TauInterval find_tau_interval(Theorem which, const Problem& prob, double lambda1) {
  double eps = initial_eps(prob);
  for (int k = 0;; ++k) {
    try {
      return tau_interval(which, prob, lambda1, eps);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::EpsTooLarge || k >= kEpsHalvings) throw;
    }
    eps *= 0.5;
  }
}

}  // namespace plap
