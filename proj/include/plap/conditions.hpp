#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "plap/eigen.hpp"
#include "plap/problem.hpp"

namespace plap {

/// The five sufficient conditions: power-profile theorem parts (i)/(ii), the sinh (i) and exp (ii)
/// profile conditions for c != 0, and the c == 0 corollary.
enum class Theorem { Thm1I, Thm1II, Thm2I, Thm2II, Cor };

std::string_view to_string(Theorem t) noexcept;
/// Accepts thm1_i, thm1_ii, thm2_i, thm2_ii, cor.
Theorem parse_theorem(std::string_view name);
inline constexpr Theorem kAllTheorems[] = {Theorem::Thm1I, Theorem::Thm1II, Theorem::Thm2I, Theorem::Thm2II,
                                           Theorem::Cor};

struct ConditionReport {
  Theorem name = Theorem::Cor;
  bool holds = false;
  /// Main inequality lhs (<|<=) rhs; second inequalities, when present, are in `auxiliary`.
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  bool strict = false;
  bool applicable = false;
  std::string reason;
  double lambda1 = 0.0;
  double gamma = 0.0;
  std::map<std::string, double> auxiliary;
};

/// max{x1 - a, b - x0}.
double gamma_factor(Interval domain, Interval window);
/// max over the two sides of M^-(end)^{2-p} (∫ M^-)^{p-1} with eps = 0; a side with no negative mass
/// contributes 0. Accepts a degenerate window x0 == x1.
double m_script(double p, const Weight& m, Interval domain, double x0, double x1);
/// (p/(p-1-q))^{p-1} (p-1)(q+1)/(p-1-q).
double c_pq(double p, double q);

ConditionReport check_thm1_i(const Problem& prob, double lambda1);
ConditionReport check_thm1_ii(const Problem& prob, double lambda1);
ConditionReport check_thm2_i(const Problem& prob, double lambda1);
ConditionReport check_thm2_ii(const Problem& prob, double lambda1);
ConditionReport check_cor(const Problem& prob, double lambda1);
ConditionReport check(Theorem which, const Problem& prob, double lambda1);

inline ConditionReport check_thm1_i(const Problem& prob, const EigenPair& e) { return check_thm1_i(prob, e.lambda1); }
inline ConditionReport check_thm1_ii(const Problem& prob, const EigenPair& e) { return check_thm1_ii(prob, e.lambda1); }
inline ConditionReport check_thm2_i(const Problem& prob, const EigenPair& e) { return check_thm2_i(prob, e.lambda1); }
inline ConditionReport check_thm2_ii(const Problem& prob, const EigenPair& e) { return check_thm2_ii(prob, e.lambda1); }
inline ConditionReport check_cor(const Problem& prob, const EigenPair& e) { return check_cor(prob, e.lambda1); }

std::vector<ConditionReport> check_all(const Problem& prob, double lambda1);

/// Admissible range for the weight multiplier tau used by the builders.
struct TauInterval {
  double lo = 0.0;
  double hi = 0.0;
  double eps = 0.0;
  /// hi was limited to kTauCap * lambda1.
  bool capped = false;
};

inline constexpr double kTauCap = 1e6;

/// Throws eps-too-large when the range is empty at this eps.
TauInterval tau_interval(Theorem which, const Problem& prob, double lambda1, double eps);

/// Starting eps: 1e-3 (1 + ∫|m|).
double initial_eps(const Problem& prob);
inline constexpr int kEpsHalvings = 20;

/// Halves eps from initial_eps until tau_interval is nonempty; rethrows after kEpsHalvings.
TauInterval find_tau_interval(Theorem which, const Problem& prob, double lambda1);

/// ||m^-||_inf and ||c+||_inf as used by all checks.
double neg_sup(const Problem& prob);
double c_sup(const Problem& prob);

}  // namespace plap
