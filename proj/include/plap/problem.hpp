#pragma once

#include <cstddef>

#include "plap/grid.hpp"
#include "plap/weight.hpp"

namespace plap {

/// -(|u'|^{p-2}u')' + c u^{p-1} = m u^q on (a, b), u = 0 at a and b, with m >= 0, m != 0 on the
/// positivity window I = (x0, x1).
struct Problem {
  double p = 2.0;
  double q = 0.5;
  Interval domain;
  Weight m;
  Weight c;
  Interval window;
  /// Accept sign-changing c; condition checks and builders then work with c+.
  bool allow_sign_changing_c = false;

  /// Throws invalid-exponent / invalid with a message naming the violated requirement.
  void validate() const;

  /// c+ (equal to c when c >= 0).
  Weight c_plus() const { return c.positive_part(); }
  double x0() const noexcept { return window.a; }
  double x1() const noexcept { return window.b; }
};

/// p' = p / (p - 1).
double p_conjugate(double p);

/// Exact y -> ∫_a^y (m^-(x) + eps) dx on the support of m.
Weight negative_mass_left(const Weight& m, double eps);
/// Exact z -> ∫_z^b (m^-(x) + eps) dx on the support of m.
Weight negative_mass_right(const Weight& m, double eps);

/// Samples of y -> ∫_a^y (m^- + eps) on a uniform grid over [a, upto].
GridFunction cumulative_negative_left(const Weight& m, double eps, double upto, std::size_t cells = kDefaultCells);
/// Samples of z -> ∫_z^b (m^- + eps) on a uniform grid over [from, b].
GridFunction cumulative_negative_right(const Weight& m, double eps, double from, std::size_t cells = kDefaultCells);

/// Default computational grid: uniform with the window ends and the breakpoints of m and c
/// inserted as nodes.
Grid default_grid(const Problem& prob, std::size_t cells = kDefaultCells);

}  // namespace plap
