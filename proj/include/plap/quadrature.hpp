#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "plap/grid.hpp"

namespace plap {

/// Gauss-Legendre rule mapped to [0, 1].
struct QuadRule {
  std::vector<double> x;
  std::vector<double> w;
};

/// Supported point counts: 2, 3, 4, 5, 6, 8, 10, 12, 16, 20.
const QuadRule& gauss_legendre(std::size_t points);

/// Composite Gauss-Legendre over `cells` equal cells of [lo, hi].
double integrate(const std::function<double(double)>& f, double lo, double hi, std::size_t cells = 64,
                 std::size_t points = 8);

/// Composite Gauss-Legendre on the cells of `grid` intersected with [lo, hi].
double integrate(const std::function<double(double)>& f, const Grid& grid, double lo, double hi,
                 std::size_t points = 8);

/// Exact integral of the piecewise-linear interpolant over [lo, hi].
double integrate(const GridFunction& f, double lo, double hi);

/// Appends nodes and weights for integrating, over [lo, hi], expressions built from powers of the
/// linear function equal to u_lo at lo and u_hi at hi. Cells on which |u| nearly vanishes at an
/// end (or changes sign) are split geometrically toward the zero so that |u|^r with r > -1 is
/// integrated to near machine precision.
void append_power_rule(double lo, double hi, double u_lo, double u_hi, const QuadRule& base,
                       std::vector<double>& xs, std::vector<double>& ws);

}  // namespace plap
