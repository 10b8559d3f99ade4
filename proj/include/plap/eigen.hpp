#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "plap/grid.hpp"
#include "plap/problem.hpp"
#include "plap/weight.hpp"

namespace plap {

/// Trajectory of u' = |w|^{1/(p-1)} sign w, w' = (c - lambda m)|u|^{p-2}u from (u, w) = (0, 1).
struct ShootResult {
  std::vector<double> x;
  std::vector<double> u;
  std::vector<double> flux;  // w = |u'|^{p-2}u'
  std::optional<double> first_zero;

  GridFunction as_grid_function() const;
};

/// Classical RK4 on the given mesh (ascending, starting at the window's left end).
ShootResult shoot(double lambda, double p, const Weight& c, const Weight& m, std::span<const double> mesh);
/// RK4 with `steps` uniform steps over the window.
ShootResult shoot(double lambda, double p, const Weight& c, const Weight& m, Interval window,
                  std::size_t steps = 4 * kDefaultCells);

struct EigenOptions {
  double tol = 1e-8;
  /// Cells of the base mesh on the window when no ambient grid is given.
  std::size_t cells = kDefaultCells;
  /// Base mesh taken from an ambient grid restricted to the window.
  std::optional<Grid> ambient;
  std::size_t max_doublings = 200;
};

/// Principal eigenpair of -(|phi'|^{p-2}phi')' + c phi^{p-1} = lambda m phi^{p-1} on the window,
/// phi = 0 at its ends, with sup-normalized phi.
class EigenPair {
 public:
  double lambda1 = 0.0;
  double rayleigh = 0.0;
  Interval window;
  /// phi on the base mesh (ambient nodes inside the window).
  GridFunction phi{Grid({0.0, 1.0}), {0.0, 0.0}};

  /// C^1 Hermite interpolation of phi from the shooting mesh; zero outside the window.
  double value(double x) const;
  double derivative(double x) const;

  std::vector<double> mesh;
  std::vector<double> mesh_value;
  std::vector<double> mesh_slope;
};

EigenPair principal_eigenvalue(double p, const Weight& c, const Weight& m, Interval window,
                               const EigenOptions& options = {});
/// Eigenpair on the problem's window with the base mesh taken from `ambient`.
EigenPair principal_eigenvalue(const Problem& prob, const Grid& ambient, double tol = 1e-8);

/// phi / max(phi), exactly 1 at the attaining node.
GridFunction normalize_sup(const GridFunction& phi);

}  // namespace plap
