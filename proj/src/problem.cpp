#include "plap/problem.hpp"

#include <cmath>
#include <sstream>

#include "plap/error.hpp"

namespace plap {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

bool same_support(const Weight& w, const Interval& d) {
  const Interval s = w.support();
  const double tol = 1e-12 * d.length();
  return std::abs(s.a - d.a) <= tol && std::abs(s.b - d.b) <= tol;
}

}  // namespace

void Problem::validate() const {
  if (!(p > 1.0)) fail(ErrorCode::InvalidExponent, "p must satisfy p > 1, got p = " + fmt(p));
  if (!(q > 0.0)) fail(ErrorCode::InvalidExponent, "q must satisfy q > 0, got q = " + fmt(q));
  if (!(q < p - 1.0)) {
    fail(ErrorCode::InvalidExponent, "q must satisfy q < p - 1 = " + fmt(p - 1.0) + ", got q = " + fmt(q));
  }
  if (!(domain.a < domain.b)) fail(ErrorCode::InvalidArgument, "domain requires a < b");
  if (!domain.contains(window)) {
    fail(ErrorCode::InvalidArgument, "window (" + fmt(window.a) + ", " + fmt(window.b) + ") must lie inside the domain");
  }
  if (!same_support(m, domain)) fail(ErrorCode::InvalidArgument, "weight m must be defined on the whole domain");
  if (!same_support(c, domain)) fail(ErrorCode::InvalidArgument, "weight c must be defined on the whole domain");
  if (!allow_sign_changing_c && c.ess_inf() < 0.0) {
    fail(ErrorCode::InvalidArgument, "c must be nonnegative (ess inf c = " + fmt(c.ess_inf()) +
                                         "); enable sign-changing c to use c+ in the constructions");
  }
  const auto [mx, mn] = m.range_on(window.a, window.b);
  if (mn < 0.0) fail(ErrorCode::InvalidArgument, "m must be nonnegative on the window, ess inf there = " + fmt(mn));
  if (!(mx > 0.0) || !(m.positive_mass(window.a, window.b) > 0.0)) {
    fail(ErrorCode::InvalidArgument, "m must not vanish identically on the window");
  }
}

double p_conjugate(double p) {
  if (!(p > 1.0)) fail(ErrorCode::InvalidExponent, "conjugate exponent needs p > 1, got p = " + fmt(p));
  return p / (p - 1.0);
}

Weight negative_mass_left(const Weight& m, double eps) {
  if (eps < 0.0) fail(ErrorCode::InvalidArgument, "eps must be nonnegative");
  return m.negative_part().plus_constant(eps).cumulative_from_left();
}

Weight negative_mass_right(const Weight& m, double eps) {
  if (eps < 0.0) fail(ErrorCode::InvalidArgument, "eps must be nonnegative");
  return m.negative_part().plus_constant(eps).cumulative_to_right();
}

GridFunction cumulative_negative_left(const Weight& m, double eps, double upto, std::size_t cells) {
  const Interval s = m.support();
  if (!(upto > s.a) || upto > s.b) fail(ErrorCode::RangeError, "upto = " + fmt(upto) + " outside the domain");
  const Weight mass = negative_mass_left(m, eps);
  return GridFunction::sample(Grid::uniform({s.a, upto}, cells), [&](double x) { return mass(x); });
}

GridFunction cumulative_negative_right(const Weight& m, double eps, double from, std::size_t cells) {
  const Interval s = m.support();
  if (from < s.a || !(from < s.b)) fail(ErrorCode::RangeError, "from = " + fmt(from) + " outside the domain");
  const Weight mass = negative_mass_right(m, eps);
  return GridFunction::sample(Grid::uniform({from, s.b}, cells), [&](double x) { return mass(x); });
}

Grid default_grid(const Problem& prob, std::size_t cells) {
  std::vector<double> extra{prob.window.a, prob.window.b};
  for (double x : prob.m.breakpoints()) extra.push_back(x);
  for (double x : prob.c.breakpoints()) extra.push_back(x);
  // Fine piecewise weights (interpolated presets) already sit on a mesh of their own.
  if (prob.m.size() > cells || prob.c.size() > cells) extra.resize(2);
  return Grid::uniform_with(prob.domain, cells, extra);
}

}  // namespace plap
