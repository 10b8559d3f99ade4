#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "plap/grid.hpp"
#include "plap/problem.hpp"

namespace plap {

/// A_i = ∫ |v'|^{p-2}v' phi_i' + c|v|^{p-2}v phi_i - m (v+)^q phi_i for every node of v's grid,
/// integrated independently of the solver's quadrature.
std::vector<double> weak_residuals(const GridFunction& v, double p, double q, const Weight& c, const Weight& m);
/// ∫ phi_i for every node.
std::vector<double> hat_integrals(const Grid& grid);

struct WeakCheck {
  bool passes = false;
  /// Worst scaled violation: max A_i/∫phi_i (sub) or max -A_i/∫phi_i (super); <= tol to pass.
  double margin = 0.0;
  std::size_t worst_index = 0;
  double worst_x = 0.0;
  double tol = 0.0;
  /// Sign and boundary requirements on the function itself.
  bool admissible = true;
  std::string reason;
  /// A_i/∫phi_i at every node (zero at the two ends).
  std::vector<double> scaled;
};

WeakCheck check_weak_subsolution(const GridFunction& v, const Problem& prob, double tol);
WeakCheck check_weak_supersolution(const GridFunction& w, const Problem& prob, double tol);

/// sup over interior hats of |A_i|/∫phi_i; nodes with skip[i] != 0 are left out.
double solution_residual(const GridFunction& u, const Problem& prob, std::span<const unsigned char> skip = {});

struct Run {
  std::size_t first = 0;
  std::size_t last = 0;
  double x_lo = 0.0;
  double x_hi = 0.0;
};

struct PositivityReport {
  double min_interior = 0.0;
  std::size_t argmin = 0;
  double argmin_x = 0.0;
  /// u(x)/(x - a) at the first interior node and u(x)/(b - x) at the last one.
  double left_ratio = 0.0;
  double right_ratio = 0.0;
  /// Maximal runs of interior nodes with u below the threshold that do not touch the boundary.
  std::vector<Run> dead_core;
  /// Such runs adjacent to an endpoint (boundary layers of very flat profiles).
  std::vector<Run> boundary_runs;
  bool has_dead_core() const noexcept { return !dead_core.empty(); }
};

inline constexpr double kDeadCoreThreshold = 1e-12;

PositivityReport positivity_profile(const GridFunction& u, double threshold = kDeadCoreThreshold);

struct RandomTestReport {
  std::size_t count = 0;
  /// Largest ∫(...)psi / ∫psi over the sampled test functions, signed as for `kind`.
  double worst = 0.0;
  std::size_t violations = 0;
};

enum class InequalityKind { Sub, Super };

/// Sampled nonnegative piecewise-linear test functions with random knots and heights.
RandomTestReport random_test_functions(const GridFunction& v, const Problem& prob, InequalityKind kind, double tol,
                                       std::size_t count, std::uint64_t seed);

}  // namespace plap
