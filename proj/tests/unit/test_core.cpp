#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "plap/error.hpp"
#include "plap/grid.hpp"
#include "plap/problem.hpp"
#include "plap/quadrature.hpp"
#include "plap/weight.hpp"

using namespace plap;

namespace {

Problem step_problem(double mu) {
  Problem pr;
  pr.p = 2.0;
  pr.q = 0.5;
  pr.domain = {0.0, 1.0};
  pr.window = {0.25, 0.75};
  const double br[] = {0.25, 0.75};
  const double vals[] = {-mu, 1.0, -mu};
  pr.m = Weight::step(pr.domain, br, vals);
  pr.c = Weight::constant(pr.domain, 0.0);
  return pr;
}

}  // namespace

TEST(Polynomial, EvalDerivativeAntiderivative) {
  Polynomial p({1.0, -2.0, 3.0});
  EXPECT_DOUBLE_EQ(p(2.0), 1.0 - 4.0 + 12.0);
  EXPECT_DOUBLE_EQ(p.derivative()(2.0), -2.0 + 12.0);
  EXPECT_DOUBLE_EQ(p.antiderivative()(1.0), 1.0 - 1.0 + 1.0);
  EXPECT_EQ(p.degree(), 2u);
  EXPECT_TRUE(Polynomial({0.0, 0.0}).is_zero());
}

TEST(Polynomial, RootsAndRange) {
  // (t - 0.3)(t - 0.7)
  Polynomial p({0.21, -1.0, 1.0});
  auto r = p.roots_in(0.0, 1.0);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_NEAR(r[0], 0.3, 1e-13);
  EXPECT_NEAR(r[1], 0.7, 1e-13);
  auto [mx, mn] = p.range_on(0.0, 1.0);
  EXPECT_NEAR(mx, 0.21, 1e-15);
  EXPECT_NEAR(mn, -0.04, 1e-15);
}

TEST(Polynomial, ShiftAndReflect) {
  Polynomial p({1.0, 2.0, 0.5});
  for (double t : {-1.0, 0.0, 0.4, 2.0}) {
    EXPECT_NEAR(p.shifted(0.3)(t), p(t + 0.3), 1e-14);
    EXPECT_NEAR(p.reflected()(t), p(-t), 1e-14);
  }
}

TEST(Weight, StepParts) {
  const Weight m = step_problem(0.5).m;
  EXPECT_DOUBLE_EQ(m(0.1), -0.5);
  EXPECT_DOUBLE_EQ(m(0.5), 1.0);
  // left piece at a breakpoint
  EXPECT_DOUBLE_EQ(m(0.25), -0.5);
  EXPECT_DOUBLE_EQ(m.ess_sup(), 1.0);
  EXPECT_DOUBLE_EQ(m.ess_inf(), -0.5);
  EXPECT_NEAR(m.integral(0.0, 1.0), 0.5 - 0.25, 1e-15);
  EXPECT_NEAR(m.positive_part().integral(0.0, 1.0), 0.5, 1e-15);
  EXPECT_NEAR(m.negative_part().integral(0.0, 1.0), 0.25, 1e-15);
  EXPECT_NEAR(m.sign_scaled(1.0, 2.0).integral(0.0, 1.0), 0.0, 1e-15);
  auto bp = m.breakpoints();
  ASSERT_EQ(bp.size(), 2u);
  EXPECT_DOUBLE_EQ(bp[0], 0.25);
}

TEST(Weight, PolynomialSignSplitIsExact) {
  // x - 0.5 on [0, 1]: m+ mass 1/8, m- mass 1/8
  const Weight::GlobalPiece pc[] = {{0.0, 1.0, {-0.5, 1.0}}};
  const Weight w = Weight::from_global(pc);
  EXPECT_NEAR(w.positive_mass(0.0, 1.0), 0.125, 1e-15);
  EXPECT_NEAR(w.negative_part().integral(0.0, 1.0), 0.125, 1e-15);
  EXPECT_NEAR(w.negative_part().sup_norm(), 0.5, 1e-15);
}

TEST(Weight, EssSupFromInteriorExtremum) {
  // x(1 - x) peaks at 1/4 strictly inside the piece
  const Weight::GlobalPiece pc[] = {{0.0, 1.0, {0.0, 1.0, -1.0}}};
  const Weight w = Weight::from_global(pc);
  EXPECT_DOUBLE_EQ(w.ess_sup(), 0.25);
}

TEST(Weight, CumulativeIsExact) {
  const Weight m = step_problem(0.5).m;
  const Weight left = m.cumulative_from_left();
  const Weight right = m.cumulative_to_right();
  for (double x : {0.1, 0.25, 0.6, 0.9, 1.0}) {
    EXPECT_NEAR(left(x), m.integral(0.0, x), 1e-15);
    EXPECT_NEAR(right(x), m.integral(x, 1.0), 1e-15);
  }
}

TEST(Weight, ReflectedAndScaled) {
  const Weight::GlobalPiece pc[] = {{0.0, 0.5, {1.0}}, {0.5, 2.0, {0.0, 1.0}}};
  const Weight w = Weight::from_global(pc);
  const Weight r = w.reflected();
  for (double x : {0.1, 0.7, 1.9}) EXPECT_NEAR(r(x), w(2.0 - x), 1e-14);
  EXPECT_NEAR(w.scaled(3.0)(1.5), 4.5, 1e-14);
  EXPECT_NEAR(w.plus_constant(1.0)(1.5), 2.5, 1e-14);
}

TEST(Weight, RejectsGaps) {
  const Weight::GlobalPiece pc[] = {{0.0, 0.4, {1.0}}, {0.5, 1.0, {1.0}}};
  EXPECT_THROW(Weight::from_global(pc), Error);
}

TEST(Grid, UniformWithExtraPoints) {
  const double extra[] = {0.3, 0.25};
  const Grid g = Grid::uniform_with({0.0, 1.0}, 8, extra);
  EXPECT_GE(g.find_node(0.3), 0);
  EXPECT_GE(g.find_node(0.25), 0);
  EXPECT_EQ(g.size(), 10u);  // 0.25 is already a node
  EXPECT_DOUBLE_EQ(g[0], 0.0);
  EXPECT_DOUBLE_EQ(g[g.size() - 1], 1.0);
}

TEST(Grid, RestrictedAndRefined) {
  const Grid g = Grid::uniform({0.0, 1.0}, 10);
  const Grid r = g.restricted({0.25, 0.75});
  EXPECT_DOUBLE_EQ(r[0], 0.25);
  EXPECT_DOUBLE_EQ(r[r.size() - 1], 0.75);
  EXPECT_EQ(g.refined(3).cells(), 30u);
}

TEST(GridFunction, InterpolationAndCsvRoundTrip) {
  const Grid g = Grid::uniform({0.0, 2.0}, 16);
  const GridFunction f = GridFunction::sample(g, [](double x) { return x * x / 3.0; });
  EXPECT_NEAR(f(0.0625), 0.5 * (f[0] + f[1]), 1e-15);
  EXPECT_THROW(f(2.5), Error);
  std::stringstream ss;
  write_csv(ss, f);
  EXPECT_EQ(ss.str().substr(0, 4), "x,u\n");
  const GridFunction back = read_csv(ss);
  ASSERT_EQ(back.size(), f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    EXPECT_EQ(back[i], f[i]);
    EXPECT_EQ(back.grid()[i], g[i]);
  }
}

TEST(Quadrature, GaussLegendreExactness) {
  for (std::size_t n : {2u, 4u, 8u, 16u}) {
    const int deg = static_cast<int>(2 * n - 1);
    const double got = integrate([&](double x) { return std::pow(x, deg); }, 0.0, 1.0, 1, n);
    EXPECT_NEAR(got, 1.0 / (deg + 1), 1e-14) << n;
  }
}

TEST(Quadrature, PowerRuleHandlesFractionalPower) {
  std::vector<double> xs, ws;
  append_power_rule(0.0, 1.0, 0.0, 1.0, gauss_legendre(10), xs, ws);
  double s = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) s += ws[i] * std::pow(xs[i], 0.3);
  EXPECT_NEAR(s, 1.0 / 1.3, 1e-13);
}

TEST(Problem, ValidateNamesTheBound) {
  Problem pr = step_problem(0.5);
  EXPECT_NO_THROW(pr.validate());
  pr.q = 1.0;
  try {
    pr.validate();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidExponent);
    EXPECT_NE(std::string(e.what()).find("q < p - 1"), std::string::npos);
  }
  pr = step_problem(0.5);
  pr.window = {0.2, 0.75};
  EXPECT_THROW(pr.validate(), Error);
  pr = step_problem(0.5);
  pr.c = Weight::constant(pr.domain, -1.0);
  EXPECT_THROW(pr.validate(), Error);
  pr.allow_sign_changing_c = true;
  EXPECT_NO_THROW(pr.validate());
}

TEST(Problem, ConjugateAndNegativeMass) {
  EXPECT_DOUBLE_EQ(p_conjugate(3.0), 1.5);
  const Problem pr = step_problem(0.5);
  const Weight left = negative_mass_left(pr.m, 0.01);
  // ∫_0^y (0.5 + 0.01)
  EXPECT_NEAR(left(0.2), 0.2 * 0.51, 1e-15);
  const Weight right = negative_mass_right(pr.m, 0.0);
  EXPECT_NEAR(right(0.8), 0.2 * 0.5, 1e-15);
}

TEST(Problem, DefaultGridContainsBreakpoints) {
  const Problem pr = step_problem(0.5);
  const Grid g = default_grid(pr, 100);
  EXPECT_GE(g.find_node(0.25), 0);
  EXPECT_GE(g.find_node(0.75), 0);
}
