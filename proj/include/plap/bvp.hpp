#pragma once

#include <cstddef>
#include <vector>

#include "plap/grid.hpp"
#include "plap/weight.hpp"

namespace plap {

struct BvpOptions {
  /// Target for max_i |A_i| / ∫phi_i over interior hats.
  double tol = 1e-10;
  std::size_t max_iter = 200;
  /// Hessian regularization of |v'|^{p-2}.
  double delta = 1e-20;
};

struct BvpResult {
  GridFunction v;
  double residual = 0.0;
  std::size_t iterations = 0;
  std::vector<double> residual_history;
  std::vector<double> energy_history;
};

/// Solves -(|v'|^{p-2}v')' + c|v|^{p-2}v = g, v = 0 at the grid ends, by damped Newton on the
/// P1 energy. Throws solver-failure when the residual does not reach the tolerance.
BvpResult solve_g_detailed(double p, const Weight& c, const Weight& g, const Grid& grid, const BvpOptions& opts = {});
GridFunction solve_g(double p, const Weight& c, const Weight& g, const Grid& grid, double tol = 1e-10);
GridFunction solve_g(double p, const Weight& c, const Weight& g, Interval domain, std::size_t cells = kDefaultCells,
                     double tol = 1e-10);

/// max over interior hats of |∫(|v'|^{p-2}v' phi_i' + c|v|^{p-2}v phi_i - g phi_i)| / ∫phi_i.
double residual_g(const GridFunction& v, double p, const Weight& c, const Weight& g);

}  // namespace plap
