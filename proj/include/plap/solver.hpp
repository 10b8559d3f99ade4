#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "plap/conditions.hpp"
#include "plap/grid.hpp"
#include "plap/problem.hpp"
#include "plap/subsuper.hpp"
#include "plap/verify.hpp"

namespace plap {

/// (1/p)∫(|u'|^p + c|u|^p) - (1/(q+1))∫ m (u+)^{q+1}.
double energy(const GridFunction& u, const Problem& prob);

struct SolveOptions {
  /// Scaled residual target at free nodes.
  double tol = 1e-9;
  std::size_t max_iter = 500;
  double delta = 1e-20;
  /// Acceptance tolerances for certificates and the final solution.
  double sub_tol = 1e-3;
  double super_tol = 1e-6;
  double residual_tol = 1e-6;
};

struct BetweenResult {
  GridFunction u{Grid({0.0, 1.0}), {0.0, 0.0}};
  /// Scaled residual over free nodes, from the solver's own quadrature.
  double residual = 0.0;
  std::size_t iterations = 0;
  std::vector<std::size_t> active_lower;
  std::vector<std::size_t> active_upper;
  std::vector<double> energy_history;
};

/// Minimizes the energy over {lower <= u <= upper} (u = 0 at the ends) by projected Newton with
/// Armijo backtracking, starting from `upper`. Throws solver-failure on stagnation.
BetweenResult solve_between_detailed(const Problem& prob, const GridFunction& lower, const GridFunction& upper,
                                     const SolveOptions& opts = {});
/// Certificates must be verified and passing; they are resampled onto `grid` when needed.
BetweenResult solve_between(const Problem& prob, const Certificate& sub, const Certificate& super, const Grid& grid,
                            const SolveOptions& opts = {});

enum class Policy { Auto, Thm1I, Thm1II, Thm2I, Thm2II, Cor };

std::string_view to_string(Policy policy) noexcept;
Policy parse_policy(std::string_view name);

struct SolutionReport {
  GridFunction u{Grid({0.0, 1.0}), {0.0, 0.0}};
  /// Independent residual over nodes where no bound is active.
  double residual = 0.0;
  double min_interior = 0.0;
  bool ordering_ok = false;
  bool success = false;
  double lambda1 = 0.0;
  std::optional<Theorem> theorem;
  std::vector<ConditionReport> conditions;
  Certificate sub;
  Certificate super;
  PositivityReport positivity;
  std::vector<std::size_t> active_nodes;
  std::size_t iterations = 0;
  /// Candidates that were tried and abandoned, with the reason.
  std::vector<std::string> notes;
};

/// Order of candidate theorems under `policy`, restricted to those whose condition holds.
std::vector<Theorem> candidates(Policy policy, const std::vector<ConditionReport>& conditions, const Problem& prob);

/// Condition checks, certificates, solve, verification. Throws no-certificate when no usable
/// condition holds or every candidate's certificates fail.
SolutionReport solve_full(const Problem& prob, const Grid& grid, Policy policy = Policy::Auto,
                          const SolveOptions& opts = {});

struct SweepSpec {
  std::vector<double> p;
  std::vector<double> q;
  /// Multiplier of m- (m -> m+ - mu m-).
  std::vector<double> mu;
  std::size_t cells = kDefaultCells;
  Policy policy = Policy::Auto;
  bool solve = true;
  /// 0 = available cores.
  std::size_t jobs = 0;
  SolveOptions opts;
};

struct SweepRow {
  double p = 0.0;
  double q = 0.0;
  double mu = 0.0;
  double lambda1 = 0.0;
  std::vector<ConditionReport> conditions;
  bool solved = false;
  std::string theorem;
  double min_interior = 0.0;
  double residual = 0.0;
  std::string error;
};

/// Cartesian product of the axes (an empty axis uses the template's value, mu = 1).
std::vector<SweepRow> sweep(const Problem& base, const SweepSpec& spec);
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

}  // namespace plap
