#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "plap/grid.hpp"
#include "plap/quadrature.hpp"
#include "plap/weight.hpp"

namespace plap {

/// Symmetric tridiagonal matrix: diag[i], off[i] couples i and i + 1.
struct SymTridiagonal {
  std::vector<double> diag;
  std::vector<double> off;
};

/// LDL^T solve; returns false (leaving x untouched) when a pivot is not positive.
bool solve_spd(const SymTridiagonal& a, std::span<const double> rhs, std::vector<double>& x);

/// Right-hand side of the discrete problem: either a fixed load g, or m (u^+)^q.
enum class SourceKind { Load, Power };

/// P1 Galerkin discretization of -(|u'|^{p-2}u')' + c|u|^{p-2}u = source on a grid. Reaction
/// integrals are computed per cell, split at weight breakpoints, with a rule graded toward zeros
/// of u.
class WeakForm {
 public:
  WeakForm(Grid grid, double p, Weight c, Weight source, SourceKind kind, double q = 0.0);

  const Grid& grid() const noexcept { return grid_; }
  /// ∫ phi_i for every node.
  const std::vector<double>& hat_mass() const noexcept { return hat_mass_; }

  /// A_i = ∫ |u'|^{p-2}u' phi_i' + c|u|^{p-2}u phi_i - source phi_i, for every node.
  std::vector<double> gradient(std::span<const double> u) const;
  /// (1/p)∫(|u'|^p + c|u|^p) - ∫ g u   or   ... - (1/(q+1))∫ m (u^+)^{q+1}.
  double energy(std::span<const double> u) const;
  /// A_i for a single node, from its two adjacent cells.
  double node_gradient(std::span<const double> u, std::size_t node) const;
  /// Per-node size of the flux rounding error in A_i when nodal values carry one ulp of error.
  std::vector<double> rounding_floor(std::span<const double> u) const;
  /// Hessian of the energy over all nodes. `delta` regularizes |s|^{p-2} as (s^2 + delta^2)^{(p-2)/2};
  /// `convexify` drops the concave part of the source term. Cells flagged in `secant_cells` use
  /// max(p-1, 1)|s|^{p-2} (Kacanov linearization, which does not overshoot across s = 0).
  SymTridiagonal hessian(std::span<const double> u, double delta, bool convexify,
                         std::span<const unsigned char> secant_cells = {}) const;

 private:
  struct Part {
    double lo;
    double hi;
    std::size_t c_piece;
    std::size_t s_piece;
  };

  template <typename Visit>
  void for_each_point(std::span<const double> u, Visit&& visit) const {
    for_cells(u, 0, grid_.cells(), visit);
  }
  template <typename Visit>
  void for_cells(std::span<const double> u, std::size_t first, std::size_t last, Visit&& visit) const;

  Grid grid_;
  double p_;
  double q_;
  Weight c_;
  Weight source_;
  SourceKind kind_;
  std::vector<std::vector<Part>> parts_;
  std::vector<double> hat_mass_;
};

/// Nonlinear Gauss-Seidel pass: for each listed node, solves A_i = 0 for u_i with the other values
/// fixed, by bracketing and bisection, staying within [lower_i, upper_i] when bounds are given.
void relax_nodes(const WeakForm& wf, std::vector<double>& u, std::span<const std::size_t> nodes,
                 std::span<const double> lower = {}, std::span<const double> upper = {});

}  // namespace plap
