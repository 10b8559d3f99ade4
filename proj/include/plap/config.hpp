#pragma once

#include <cstddef>
#include <string>

#include <json.hpp>

#include "plap/grid.hpp"
#include "plap/problem.hpp"
#include "plap/solver.hpp"

namespace plap {

/// Problem plus the numerical settings a config file may carry.
struct ProblemConfig {
  Problem problem;
  std::size_t cells = kDefaultCells;
  SolveOptions solve;
  double eigen_tol = 1e-8;

  Grid grid() const { return default_grid(problem, cells); }
};

/// Weight spec: a number (constant), a list of {"from", "to", "poly"} with coefficients in global x,
/// or a preset object {"preset": "constant" | "step" | "sin-power", ...}.
/// Throws config-error prefixed with `field`.
Weight parse_weight(const nlohmann::json& spec, Interval domain, const std::string& field);

/// Throws config-error naming the offending field; a Problem that fails validation is reported
/// the same way.
ProblemConfig parse_config(const nlohmann::json& doc);
ProblemConfig load_config(const std::string& path);
ProblemConfig parse_config_text(const std::string& text);

}  // namespace plap
