#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "plap/bvp.hpp"
#include "plap/conditions.hpp"
#include "plap/config.hpp"
#include "plap/eigen.hpp"
#include "plap/error.hpp"
#include "plap/report.hpp"
#include "plap/solver.hpp"
#include "plap/subsuper.hpp"
#include "plap/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace plap;

namespace {

constexpr int kOk = 0;
constexpr int kInternal = 1;
constexpr int kNotSatisfied = 2;
constexpr int kUsage = 64;

struct Common {
  std::string config;
  std::string out = ".";
  std::uint64_t seed = 0;
};

json header(const char* command, const Common& common) {
  return {{"schema", kReportSchema}, {"command", command}, {"seed", common.seed}};
}

fs::path out_dir(const Common& common) {
  fs::path dir(common.out);
  fs::create_directories(dir);
  return dir;
}

void emit(const Common& common, const std::string& name, const json& report) {
  write_json(std::cout, report);
  write_json((out_dir(common) / name).string(), report);
}

json conditions_json(const std::vector<ConditionReport>& conds) {
  json a = json::array();
  for (const auto& c : conds) a.push_back(to_json(c));
  return a;
}

std::vector<ConditionReport> conditions_or_empty(const Problem& prob, const EigenPair& eig) {
  return check_all(prob, eig.lambda1);
}

int cmd_check(const Common& common, const std::string& which) {
  const ProblemConfig cfg = load_config(common.config);
  const Grid grid = cfg.grid();
  const EigenPair eig = principal_eigenvalue(cfg.problem, grid, cfg.eigen_tol);
  std::vector<ConditionReport> conds;
  if (which.empty()) {
    conds = check_all(cfg.problem, eig.lambda1);
  } else {
    conds.push_back(check(parse_theorem(which), cfg.problem, eig.lambda1));
  }
  json report = header("check", common);
  report["lambda1"] = eig.lambda1;
  report["conditions"] = conditions_json(conds);
  bool any = false;
  for (const auto& c : conds) any = any || c.holds;
  report["any_holds"] = any;
  emit(common, "check.json", report);
  return any ? kOk : kNotSatisfied;
}

int cmd_eigen(const Common& common) {
  const ProblemConfig cfg = load_config(common.config);
  const EigenPair eig = principal_eigenvalue(cfg.problem, cfg.grid(), cfg.eigen_tol);
  const fs::path csv = out_dir(common) / "phi.csv";
  write_csv(csv.string(), eig.phi);
  json report = header("eigen", common);
  report["lambda1"] = eig.lambda1;
  report["rayleigh"] = eig.rayleigh;
  report["window"] = {eig.window.a, eig.window.b};
  report["phi_csv"] = "phi.csv";
  emit(common, "eigen.json", report);
  return kOk;
}

int cmd_certify(const Common& common, const std::string& theorem, const std::string& kind) {
  const ProblemConfig cfg = load_config(common.config);
  const Grid grid = cfg.grid();
  json report = header("certify", common);
  Certificate cert;
  if (kind == "super") {
    cert = build_supersolution(cfg.problem, grid);
    verify_certificate(cert, cfg.problem, cfg.solve.super_tol);
  } else {
    const Theorem which = parse_theorem(theorem);
    report["theorem"] = std::string(to_string(which));
    const EigenPair eig = principal_eigenvalue(cfg.problem, grid, cfg.eigen_tol);
    const ConditionReport cond = check(which, cfg.problem, eig.lambda1);
    report["condition"] = to_json(cond);
    if (!cond.holds) {
      report["certificate"] = nullptr;
      report["error"] = "condition " + std::string(to_string(which)) + " does not hold";
      emit(common, "certificate.json", report);
      return kNotSatisfied;
    }
    cert = build_subsolution(cfg.problem, which, grid, eig);
    verify_certificate(cert, cfg.problem, cfg.solve.sub_tol);
  }
  write_csv((out_dir(common) / "certificate.csv").string(), cert.u);
  report["certificate"] = to_json(cert);
  report["csv"] = "certificate.csv";
  emit(common, "certificate.json", report);
  return cert.verified && cert.verified->passes ? kOk : kInternal;
}

int cmd_solve(const Common& common, const std::string& policy_name) {
  const ProblemConfig cfg = load_config(common.config);
  const Grid grid = cfg.grid();
  const Policy policy = parse_policy(policy_name);
  json report = header("solve", common);
  report["policy"] = std::string(to_string(policy));
  try {
    const SolutionReport sol = solve_full(cfg.problem, grid, policy, cfg.solve);
    const fs::path dir = out_dir(common);
    write_csv((dir / "solution.csv").string(), sol.u);
    write_csv((dir / "subsolution.csv").string(), sol.sub.u);
    write_csv((dir / "supersolution.csv").string(), sol.super.u);
    report["report"] = to_json(sol);
    report["csv"] = "solution.csv";
    emit(common, "solution.json", report);
    return sol.success ? kOk : kInternal;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoCertificate && e.code() != ErrorCode::NoSupersolution &&
        e.code() != ErrorCode::NoEigenvalue) {
      throw;
    }
    report["report"] = nullptr;
    report["error"] = e.what();
    try {
      const EigenPair eig = principal_eigenvalue(cfg.problem, grid, cfg.eigen_tol);
      report["lambda1"] = eig.lambda1;
      report["conditions"] = conditions_json(conditions_or_empty(cfg.problem, eig));
    } catch (const Error&) {
      report["conditions"] = json::array();
    }
    emit(common, "solution.json", report);
    return kNotSatisfied;
  }
}

int cmd_verify(const Common& common, const std::string& kind, const std::string& csv, std::size_t tests) {
  const ProblemConfig cfg = load_config(common.config);
  GridFunction u = [&] {
    try {
      return read_csv(csv);
    } catch (const Error& e) {
      fail(ErrorCode::ConfigError, "--csv: " + std::string(e.what()));
    }
  }();
  const Interval gi = u.grid().interval(), d = cfg.problem.domain;
  const double tol = 1e-12 * d.length();
  if (std::abs(gi.a - d.a) > tol || std::abs(gi.b - d.b) > tol) {
    fail(ErrorCode::ConfigError, "--csv: grid does not span the problem domain");
  }
  json report = header("verify", common);
  report["kind"] = kind;
  bool ok = false;
  if (kind == "solution") {
    const double r = solution_residual(u, cfg.problem);
    const PositivityReport pos = positivity_profile(u);
    ok = r <= cfg.solve.residual_tol && pos.min_interior > 0.0 && !pos.has_dead_core();
    report["residual"] = r;
    report["tol"] = cfg.solve.residual_tol;
    report["positivity"] = to_json(pos);
  } else {
    const bool sub = kind == "sub";
    const double t = sub ? cfg.solve.sub_tol : cfg.solve.super_tol;
    const WeakCheck w = sub ? check_weak_subsolution(u, cfg.problem, t) : check_weak_supersolution(u, cfg.problem, t);
    const RandomTestReport rt = random_test_functions(u, cfg.problem, sub ? InequalityKind::Sub : InequalityKind::Super,
                                                      t, tests, common.seed);
    ok = w.passes && rt.violations == 0;
    report["check"] = to_json(w);
    report["random_tests"] = to_json(rt);
  }
  report["passes"] = ok;
  emit(common, "verify.json", report);
  return ok ? kOk : kNotSatisfied;
}

// "lo:hi:n" (inclusive linspace) or "a,b,c".
std::vector<double> parse_axis(const std::string& spec, const char* name) {
  std::vector<double> out;
  if (spec.empty()) return out;
  auto num = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      fail(ErrorCode::ConfigError, std::string("--") + name + ": cannot parse \"" + s + "\"");
    }
  };
  if (spec.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
    if (parts.size() != 3) fail(ErrorCode::ConfigError, std::string("--") + name + ": expected lo:hi:count");
    const double lo = num(parts[0]), hi = num(parts[1]);
    const double n = num(parts[2]);
    if (!(n >= 1) || n != static_cast<double>(static_cast<long>(n))) {
      fail(ErrorCode::ConfigError, std::string("--") + name + ": count must be a positive integer");
    }
    const auto k = static_cast<std::size_t>(n);
    for (std::size_t i = 0; i < k; ++i) out.push_back(k == 1 ? lo : lo + (hi - lo) * double(i) / double(k - 1));
    return out;
  }
  std::stringstream ss(spec);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(num(item));
  return out;
}

int cmd_sweep(const Common& common, const std::string& p, const std::string& q, const std::string& mu,
              std::size_t jobs, bool no_solve, const std::string& policy_name) {
  const ProblemConfig cfg = load_config(common.config);
  SweepSpec spec;
  spec.p = parse_axis(p, "p");
  spec.q = parse_axis(q, "q");
  spec.mu = parse_axis(mu, "mu");
  spec.cells = cfg.cells;
  spec.policy = parse_policy(policy_name);
  spec.solve = !no_solve;
  spec.jobs = jobs;
  spec.opts = cfg.solve;
  const std::vector<SweepRow> rows = sweep(cfg.problem, spec);
  {
    std::ofstream os(out_dir(common) / "sweep.csv");
    write_sweep_csv(os, rows);
  }
  std::size_t solved = 0, failed = 0;
  for (const auto& r : rows) {
    solved += r.solved ? 1 : 0;
    failed += r.error.empty() ? 0 : 1;
  }
  json report = header("sweep", common);
  report["rows"] = rows.size();
  report["solved"] = solved;
  report["errors"] = failed;
  report["csv"] = "sweep.csv";
  emit(common, "sweep.json", report);
  return kOk;
}

void add_common(CLI::App* sub, Common& common) {
  sub->add_option("config", common.config, "Problem config (JSON)")->required()->check(CLI::ExistingFile);
  sub->add_option("--out", common.out, "Directory for reports and CSV files")->capture_default_str();
  sub->add_option("--seed", common.seed, "Seed for every random choice")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Positive solutions of sublinear 1D p-Laplacian problems with indefinite weight"};
  app.require_subcommand(1);
  const std::vector<std::string> theorems{"thm1_i", "thm1_ii", "thm2_i", "thm2_ii", "cor"};

  Common common;
  std::string which, theorem, kind = "sub", policy = "auto", csv, p_axis, q_axis, mu_axis;
  std::size_t tests = 200, jobs = 0;
  bool no_solve = false;

  auto* check_cmd = app.add_subcommand("check", "Evaluate the sufficient conditions");
  add_common(check_cmd, common);
  check_cmd->add_option("--which", which, "Only this condition")->check(CLI::IsMember(theorems));

  auto* eigen_cmd = app.add_subcommand("eigen", "Principal eigenpair on the window");
  add_common(eigen_cmd, common);

  auto* certify_cmd = app.add_subcommand("certify", "Build and verify a sub- or supersolution");
  add_common(certify_cmd, common);
  certify_cmd->add_option("--theorem", theorem, "Construction for the subsolution")->check(CLI::IsMember(theorems));
  certify_cmd->add_option("--kind", kind, "sub or super")->check(CLI::IsMember({"sub", "super"}))->capture_default_str();

  auto* solve_cmd = app.add_subcommand("solve", "Certificates, ordered solve and verification");
  add_common(solve_cmd, common);
  std::vector<std::string> policies{"auto"};
  policies.insert(policies.end(), theorems.begin(), theorems.end());
  solve_cmd->add_option("--policy", policy, "Which construction to use")
      ->check(CLI::IsMember(policies))
      ->capture_default_str();

  auto* verify_cmd = app.add_subcommand("verify", "Check a grid function from CSV");
  add_common(verify_cmd, common);
  verify_cmd->add_option("--kind", kind, "sub, super or solution")
      ->required()
      ->check(CLI::IsMember({"sub", "super", "solution"}));
  verify_cmd->add_option("--csv", csv, "Grid function with header x,u")->required()->check(CLI::ExistingFile);
  verify_cmd->add_option("--tests", tests, "Random test functions")->capture_default_str();

  auto* sweep_cmd = app.add_subcommand("sweep", "Condition/solve atlas over p, q and the m- multiplier");
  add_common(sweep_cmd, common);
  sweep_cmd->add_option("--p", p_axis, "lo:hi:count or a,b,c");
  sweep_cmd->add_option("--q", q_axis, "lo:hi:count or a,b,c");
  sweep_cmd->add_option("--mu", mu_axis, "Multiplier of m-: lo:hi:count or a,b,c");
  sweep_cmd->add_option("--jobs", jobs, "Worker threads (0 = all cores)")->capture_default_str();
  sweep_cmd->add_option("--policy", policy, "Construction policy")->check(CLI::IsMember(policies))->capture_default_str();
  sweep_cmd->add_flag("--no-solve", no_solve, "Only evaluate conditions");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*check_cmd) return cmd_check(common, which);
    if (*eigen_cmd) return cmd_eigen(common);
    if (*certify_cmd) {
      if (kind == "sub" && theorem.empty()) {
        std::cerr << "certify: --theorem is required for --kind sub\n";
        return kUsage;
      }
      return cmd_certify(common, theorem, kind);
    }
    if (*solve_cmd) return cmd_solve(common, policy);
    if (*verify_cmd) return cmd_verify(common, kind, csv, tests);
    if (*sweep_cmd) return cmd_sweep(common, p_axis, q_axis, mu_axis, jobs, no_solve, policy);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::ConfigError:
      case ErrorCode::InvalidExponent:
        return kUsage;
      case ErrorCode::NoCertificate:
      case ErrorCode::NoSupersolution:
        return kNotSatisfied;
      default:
        return kInternal;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}
