#include "plap/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "plap/error.hpp"

namespace plap {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& field, const std::string& what) {
  fail(ErrorCode::ConfigError, field + ": " + what);
}

double number(const json& v, const std::string& field) {
  if (!v.is_number()) bad(field, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) bad(field, "must be finite");
  return x;
}

double number_at(const json& obj, const char* key, const std::string& field) {
  if (!obj.contains(key)) bad(field + "." + key, "missing");
  return number(obj.at(key), field + "." + key);
}

double number_or(const json& obj, const char* key, const std::string& field, double fallback) {
  if (!obj.contains(key)) return fallback;
  return number(obj.at(key), field + "." + key);
}

std::vector<double> numbers(const json& v, const std::string& field) {
  if (!v.is_array()) bad(field, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(number(v[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

Interval interval(const json& v, const std::string& field) {
  std::vector<double> ab;
  if (v.is_object()) {
    ab = {number_at(v, "a", field), number_at(v, "b", field)};
  } else {
    ab = numbers(v, field);
  }
  if (ab.size() != 2) bad(field, "expected [a, b]");
  if (!(ab[0] < ab[1])) bad(field, "needs a < b");
  return {ab[0], ab[1]};
}

std::size_t count(const json& v, const std::string& field) {
  if (!v.is_number_integer() && !v.is_number_unsigned()) bad(field, "expected a positive integer");
  const auto n = v.get<long long>();
  if (n <= 0) bad(field, "expected a positive integer");
  return static_cast<std::size_t>(n);
}

// Wraps library errors raised while building a weight.
template <class F>
Weight guarded(const std::string& field, F&& make) {
  try {
    return make();
  } catch (const Error& e) {
    bad(field, e.what());
  }
}

}  // namespace

Weight parse_weight(const json& spec, Interval domain, const std::string& field) {
  if (spec.is_number()) {
    const double v = number(spec, field);
    return Weight::constant(domain, v);
  }
  if (spec.is_array()) {
    if (spec.empty()) bad(field, "needs at least one piece");
    std::vector<Weight::GlobalPiece> pieces;
    for (std::size_t i = 0; i < spec.size(); ++i) {
      const std::string f = field + "[" + std::to_string(i) + "]";
      const json& pc = spec[i];
      if (!pc.is_object()) bad(f, "expected {\"from\", \"to\", \"poly\"}");
      if (!pc.contains("poly")) bad(f + ".poly", "missing");
      Weight::GlobalPiece g{number_at(pc, "from", f), number_at(pc, "to", f), numbers(pc.at("poly"), f + ".poly")};
      if (!(g.from < g.to)) bad(f, "needs from < to");
      if (g.poly.empty()) bad(f + ".poly", "needs at least one coefficient");
      pieces.push_back(std::move(g));
    }
    return guarded(field, [&] { return Weight::from_global(pieces); });
  }
  if (!spec.is_object()) bad(field, "expected a number, a list of pieces or a preset object");
  if (!spec.contains("preset") || !spec.at("preset").is_string()) bad(field + ".preset", "missing or not a string");
  const std::string preset = spec.at("preset").get<std::string>();
  if (preset == "constant") {
    const double v = number_at(spec, "value", field);
    return Weight::constant(domain, v);
  }
  if (preset == "step") {
    if (!spec.contains("breaks")) bad(field + ".breaks", "missing");
    if (!spec.contains("values")) bad(field + ".values", "missing");
    const std::vector<double> br = numbers(spec.at("breaks"), field + ".breaks");
    const std::vector<double> vals = numbers(spec.at("values"), field + ".values");
    if (vals.size() != br.size() + 1) bad(field + ".values", "needs exactly one more entry than breaks");
    return guarded(field, [&] { return Weight::step(domain, br, vals); });
  }
  if (preset == "sin-power") {
    // amplitude * |sin(pi (x - a) / (b - a))|^power, linearly interpolated
    const double amp = number_or(spec, "amplitude", field, 1.0);
    const double power = number_or(spec, "power", field, 1.0);
    if (power < 0.0) bad(field + ".power", "must be nonnegative");
    std::size_t pieces = 4096;
    if (spec.contains("pieces")) pieces = count(spec.at("pieces"), field + ".pieces");
    const double a = domain.a, len = domain.length();
    return guarded(field, [&] {
      return Weight::interpolate_linear(domain, pieces, [=](double x) {
        return amp * std::pow(std::abs(std::sin(std::numbers::pi * (x - a) / len)), power);
      });
    });
  }
  bad(field + ".preset", "unknown preset \"" + preset + "\" (constant, step, sin-power)");
}

ProblemConfig parse_config(const json& doc) {
  if (!doc.is_object()) bad("config", "expected a JSON object");
  static const char* known[] = {"p", "q", "domain", "window", "m", "c", "grid", "tolerances", "allow_sign_changing_c",
                                "name", "description"};
  for (const auto& [key, value] : doc.items()) {
    if (std::find(std::begin(known), std::end(known), key) == std::end(known)) bad(key, "unknown field");
  }
  ProblemConfig cfg;
  Problem& prob = cfg.problem;
  prob.p = number_at(doc, "p", "config");
  prob.q = number_at(doc, "q", "config");
  prob.domain = doc.contains("domain") ? interval(doc.at("domain"), "domain") : Interval{0.0, 1.0};
  if (!doc.contains("window")) bad("window", "missing");
  prob.window = interval(doc.at("window"), "window");
  if (!doc.contains("m")) bad("m", "missing");
  prob.m = parse_weight(doc.at("m"), prob.domain, "m");
  prob.c = doc.contains("c") ? parse_weight(doc.at("c"), prob.domain, "c") : Weight::constant(prob.domain, 0.0);
  if (doc.contains("allow_sign_changing_c")) {
    if (!doc.at("allow_sign_changing_c").is_boolean()) bad("allow_sign_changing_c", "expected true or false");
    prob.allow_sign_changing_c = doc.at("allow_sign_changing_c").get<bool>();
  }
  if (doc.contains("grid")) {
    const json& g = doc.at("grid");
    if (g.is_number()) {
      cfg.cells = count(g, "grid");
    } else if (g.is_object()) {
      if (g.contains("n")) cfg.cells = count(g.at("n"), "grid.n");
    } else {
      bad("grid", "expected {\"n\": cells}");
    }
    if (cfg.cells < 8) bad("grid.n", "needs at least 8 cells");
  }
  if (doc.contains("tolerances")) {
    const json& t = doc.at("tolerances");
    if (!t.is_object()) bad("tolerances", "expected an object");
    SolveOptions& o = cfg.solve;
    o.tol = number_or(t, "solve", "tolerances", o.tol);
    o.sub_tol = number_or(t, "sub", "tolerances", o.sub_tol);
    o.super_tol = number_or(t, "super", "tolerances", o.super_tol);
    o.residual_tol = number_or(t, "residual", "tolerances", o.residual_tol);
    o.delta = number_or(t, "delta", "tolerances", o.delta);
    cfg.eigen_tol = number_or(t, "eigen", "tolerances", cfg.eigen_tol);
    if (t.contains("max_iter")) o.max_iter = count(t.at("max_iter"), "tolerances.max_iter");
    for (double v : {o.tol, o.sub_tol, o.super_tol, o.residual_tol, cfg.eigen_tol}) {
      if (!(v > 0.0)) bad("tolerances", "values must be positive");
    }
    if (o.delta < 0.0) bad("tolerances.delta", "must be nonnegative");
  }
  try {
    prob.validate();
  } catch (const Error& e) {
    const std::string msg = e.what();
    std::string field = "problem";
    if (e.code() == ErrorCode::InvalidExponent) {
      field = msg.find("q must") != std::string::npos ? "q" : "p";
    } else if (msg.find("window") != std::string::npos) {
      field = "window";
    } else if (msg.find(" m ") != std::string::npos || msg.find("m must") != std::string::npos) {
      field = "m";
    } else if (msg.find(" c ") != std::string::npos || msg.find("c must") != std::string::npos) {
      field = "c";
    } else if (msg.find("domain") != std::string::npos) {
      field = "domain";
    }
    bad(field, msg);
  }
  return cfg;
}

ProblemConfig parse_config_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    bad("config", std::string("malformed JSON: ") + e.what());
  }
  return parse_config(doc);
}

ProblemConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("config", "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

}  // namespace plap
