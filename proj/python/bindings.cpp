#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

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

namespace py = pybind11;
using nlohmann::json;
using namespace plap;

namespace {

json samples(const GridFunction& f) {
  const auto nodes = f.grid().nodes();
  const auto vals = f.values();
  return {{"x", std::vector<double>(nodes.begin(), nodes.end())}, {"u", std::vector<double>(vals.begin(), vals.end())}};
}

json with_schema(json j) {
  j["schema"] = kReportSchema;
  return j;
}

std::string check_json(const std::string& config, const std::string& which) {
  const ProblemConfig cfg = parse_config_text(config);
  const EigenPair eig = principal_eigenvalue(cfg.problem, cfg.grid(), cfg.eigen_tol);
  json conds = json::array();
  if (which.empty()) {
    for (const auto& c : check_all(cfg.problem, eig.lambda1)) conds.push_back(to_json(c));
  } else {
    conds.push_back(to_json(check(parse_theorem(which), cfg.problem, eig.lambda1)));
  }
  return dump_json(with_schema({{"lambda1", eig.lambda1}, {"conditions", conds}}));
}

std::string eigen_json(const std::string& config) {
  const ProblemConfig cfg = parse_config_text(config);
  const EigenPair eig = principal_eigenvalue(cfg.problem, cfg.grid(), cfg.eigen_tol);
  json j = samples(eig.phi);
  j["lambda1"] = eig.lambda1;
  j["rayleigh"] = eig.rayleigh;
  return dump_json(with_schema(j));
}

std::string certify_json(const std::string& config, const std::string& theorem, const std::string& kind) {
  const ProblemConfig cfg = parse_config_text(config);
  const Grid grid = cfg.grid();
  Certificate cert;
  if (kind == "super") {
    cert = build_supersolution(cfg.problem, grid);
    verify_certificate(cert, cfg.problem, cfg.solve.super_tol);
  } else if (kind == "sub") {
    cert = build_subsolution(cfg.problem, parse_theorem(theorem), grid);
    verify_certificate(cert, cfg.problem, cfg.solve.sub_tol);
  } else {
    fail(ErrorCode::InvalidArgument, "kind must be sub or super");
  }
  json j = samples(cert.u);
  j["certificate"] = to_json(cert);
  return dump_json(with_schema(j));
}

std::string solve_json(const std::string& config, const std::string& policy) {
  const ProblemConfig cfg = parse_config_text(config);
  const SolutionReport r = solve_full(cfg.problem, cfg.grid(), parse_policy(policy), cfg.solve);
  json j = samples(r.u);
  j["report"] = to_json(r);
  return dump_json(with_schema(j));
}

std::string verify_json(const std::string& config, const std::string& kind, const std::vector<double>& x,
                        const std::vector<double>& u, std::size_t tests, std::uint64_t seed) {
  const ProblemConfig cfg = parse_config_text(config);
  if (x.size() != u.size()) fail(ErrorCode::InvalidArgument, "x and u must have the same length");
  const GridFunction f(Grid(x), u);
  json j;
  if (kind == "solution") {
    const double r = solution_residual(f, cfg.problem);
    const PositivityReport pos = positivity_profile(f);
    j["residual"] = r;
    j["positivity"] = to_json(pos);
    j["passes"] = r <= cfg.solve.residual_tol && pos.min_interior > 0.0 && !pos.has_dead_core();
  } else if (kind == "sub" || kind == "super") {
    const bool sub = kind == "sub";
    const double t = sub ? cfg.solve.sub_tol : cfg.solve.super_tol;
    const WeakCheck w = sub ? check_weak_subsolution(f, cfg.problem, t) : check_weak_supersolution(f, cfg.problem, t);
    const RandomTestReport rt =
        random_test_functions(f, cfg.problem, sub ? InequalityKind::Sub : InequalityKind::Super, t, tests, seed);
    j["check"] = to_json(w);
    j["random_tests"] = to_json(rt);
    j["passes"] = w.passes && rt.violations == 0;
  } else {
    fail(ErrorCode::InvalidArgument, "kind must be sub, super or solution");
  }
  j["kind"] = kind;
  return dump_json(with_schema(j));
}

py::tuple solve_g_const(double p, double c, double g, double a, double b, std::size_t cells) {
  const Interval I{a, b};
  const GridFunction v = solve_g(p, Weight::constant(I, c), Weight::constant(I, g), I, cells);
  const auto nodes = v.grid().nodes();
  const auto vals = v.values();
  return py::make_tuple(std::vector<double>(nodes.begin(), nodes.end()), std::vector<double>(vals.begin(), vals.end()));
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "Sub/supersolution certificates and positive solutions for 1D sublinear p-Laplacian problems";

  static py::exception<Error> error_type(mod, "PlapError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr ptr) {
    try {
      if (ptr) std::rethrow_exception(ptr);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error_type.ptr())(e.what());
      exc.attr("code") = std::string(to_string(e.code()));
      PyErr_SetObject(error_type.ptr(), exc.ptr());
    }
  });

  mod.def("c_pq", &c_pq, py::arg("p"), py::arg("q"));
  mod.def("check_json", &check_json, py::arg("config"), py::arg("which") = "");
  mod.def("eigen_json", &eigen_json, py::arg("config"));
  mod.def("certify_json", &certify_json, py::arg("config"), py::arg("theorem") = "", py::arg("kind") = "sub");
  mod.def("solve_json", &solve_json, py::arg("config"), py::arg("policy") = "auto");
  mod.def("verify_json", &verify_json, py::arg("config"), py::arg("kind"), py::arg("x"), py::arg("u"),
          py::arg("tests") = 200, py::arg("seed") = 0);
  mod.def("solve_g", &solve_g_const, py::arg("p"), py::arg("c") = 0.0, py::arg("g") = 1.0, py::arg("a") = 0.0,
          py::arg("b") = 1.0, py::arg("cells") = kDefaultCells,
          "Auxiliary problem with constant c and load g; returns (x, v).");
  mod.attr("REPORT_SCHEMA") = kReportSchema;
}
