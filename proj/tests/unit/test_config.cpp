#include <gtest/gtest.h>

#include <cmath>

#include "plap/config.hpp"
#include "plap/error.hpp"
#include "plap/report.hpp"

using namespace plap;
using nlohmann::json;

namespace {

json base() {
  return json::parse(R"({
    "p": 2, "q": 0.5, "domain": [0, 1], "window": [0.25, 0.75],
    "m": {"preset": "step", "breaks": [0.25, 0.75], "values": [-0.5, 1, -0.5]},
    "c": 0, "grid": {"n": 512}
  })");
}

std::string error_of(const json& doc) {
  try {
    parse_config(doc);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ConfigError);
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Config, ParsesStepProblem) {
  const ProblemConfig cfg = parse_config(base());
  EXPECT_EQ(cfg.cells, 512u);
  EXPECT_DOUBLE_EQ(cfg.problem.p, 2.0);
  EXPECT_DOUBLE_EQ(cfg.problem.m(0.1), -0.5);
  EXPECT_DOUBLE_EQ(cfg.problem.c(0.3), 0.0);
  EXPECT_GE(cfg.grid().find_node(0.75), 0);
}

TEST(Config, PiecewisePolynomialAndPresets) {
  const Interval I{0.0, 2.0};
  const Weight w = parse_weight(json::parse(R"([{"from": 0, "to": 1, "poly": [0, 1]},
                                                {"from": 1, "to": 2, "poly": [3, -2]}])"),
                                I, "m");
  EXPECT_DOUBLE_EQ(w(0.5), 0.5);
  EXPECT_DOUBLE_EQ(w(1.5), 0.0);
  const Weight s = parse_weight(json::parse(R"({"preset": "sin-power", "amplitude": 2, "power": 1, "pieces": 64})"), I, "m");
  EXPECT_NEAR(s(1.0), 2.0, 1e-12);
  EXPECT_NEAR(s(0.0), 0.0, 1e-12);
  EXPECT_DOUBLE_EQ(parse_weight(json::parse(R"({"preset": "constant", "value": 3})"), I, "c")(1.2), 3.0);
}

TEST(Config, FieldLevelErrors) {
  json d = base();
  d["q"] = 1.5;
  EXPECT_EQ(error_of(d).rfind("config-error: q:", 0), 0u) << error_of(d);
  EXPECT_NE(error_of(d).find("q < p - 1"), std::string::npos);

  d = base();
  d["m"]["values"] = {1, 2};
  EXPECT_NE(error_of(d).find("m.values"), std::string::npos);

  d = base();
  d["m"]["preset"] = "gauss";
  EXPECT_NE(error_of(d).find("m.preset"), std::string::npos);

  d = base();
  d["window"] = {0.75, 0.25};
  EXPECT_NE(error_of(d).find("window"), std::string::npos);

  d = base();
  d["c"] = -1;
  EXPECT_NE(error_of(d).find("c:"), std::string::npos);
  d["allow_sign_changing_c"] = true;
  EXPECT_TRUE(parse_config(d).problem.allow_sign_changing_c);

  d = base();
  d["grid"] = {{"n", -3}};
  EXPECT_NE(error_of(d).find("grid.n"), std::string::npos);

  d = base();
  d["colour"] = 1;
  EXPECT_NE(error_of(d).find("colour"), std::string::npos);

  d = base();
  d.erase("p");
  EXPECT_NE(error_of(d).find("config.p"), std::string::npos);

  EXPECT_THROW(parse_config_text("{ not json"), Error);
}

TEST(Config, Tolerances) {
  json d = base();
  d["tolerances"] = {{"sub", 1e-4}, {"residual", 1e-8}, {"max_iter", 50}};
  const ProblemConfig cfg = parse_config(d);
  EXPECT_DOUBLE_EQ(cfg.solve.sub_tol, 1e-4);
  EXPECT_DOUBLE_EQ(cfg.solve.residual_tol, 1e-8);
  EXPECT_EQ(cfg.solve.max_iter, 50u);
  d["tolerances"] = {{"sub", -1.0}};
  EXPECT_NE(error_of(d).find("tolerances"), std::string::npos);
}

TEST(Report, SeventeenDigitsAndNull) {
  json j{{"a", 0.1}, {"b", 3}, {"c", std::nan("")}, {"d", "x\"y"}, {"e", json::array({1.0, true})}};
  const std::string s = dump_json(j);
  EXPECT_NE(s.find("\"a\": 0.10000000000000001"), std::string::npos) << s;
  EXPECT_NE(s.find("\"b\": 3"), std::string::npos);
  EXPECT_NE(s.find("\"c\": null"), std::string::npos);
  EXPECT_NE(s.find("\"x\\\"y\""), std::string::npos);
  EXPECT_NE(s.find("1.0"), std::string::npos);
  // round trip keeps the double exactly
  EXPECT_EQ(json::parse(s)["a"].get<double>(), 0.1);
}

TEST(Report, ConditionReportFields) {
  ConditionReport r;
  r.name = Theorem::Cor;
  r.holds = true;
  r.lhs = 1.0;
  r.rhs = 2.0;
  r.auxiliary["second"] = 4.0;
  const json j = to_json(r);
  EXPECT_EQ(j["name"], "cor");
  EXPECT_EQ(j["holds"], true);
  EXPECT_EQ(j["auxiliary"]["second"], 4.0);
}
