#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "plap/conditions.hpp"
#include "plap/error.hpp"

using namespace plap;

namespace {

constexpr double pi = std::numbers::pi;

Problem step_problem(double p, double q, double mu, double c) {
  Problem pr;
  pr.p = p;
  pr.q = q;
  pr.domain = {0.0, 1.0};
  pr.window = {0.25, 0.75};
  const double br[] = {0.25, 0.75};
  const double vals[] = {-mu, 1.0, -mu};
  pr.m = Weight::step(pr.domain, br, vals);
  pr.c = Weight::constant(pr.domain, c);
  return pr;
}

}  // namespace

TEST(Conditions, ConstantCpq) {
  EXPECT_NEAR(c_pq(2.0, 0.5), 12.0, 1e-12);
  // (p/d)^{p-1} (p-1)(q+1)/d with p = 3, q = 1: d = 1
  EXPECT_NEAR(c_pq(3.0, 1.0), 9.0 * 2.0 * 2.0, 1e-12);
}

TEST(Conditions, Gamma) {
  EXPECT_DOUBLE_EQ(gamma_factor({0.0, 1.0}, {0.25, 0.75}), 0.75);
  EXPECT_DOUBLE_EQ(gamma_factor({0.0, 1.0}, {0.1, 0.3}), 0.9);
}

TEST(Conditions, MScriptStepWeight) {
  // left side [0, 3/4]: M(y) = ∫_0^y m- = 0.4 min(y, 1/4), M(3/4) = 0.1, ∫_0^{3/4} M = 0.0125 + 0.05
  const Weight m = step_problem(2.0, 0.5, 0.4, 0.0).m;
  EXPECT_NEAR(m_script(2.0, m, {0.0, 1.0}, 0.25, 0.75), 0.0625, 1e-15);
  EXPECT_NEAR(m_script(3.0, m, {0.0, 1.0}, 0.25, 0.75), 0.0625 * 0.0625 / 0.1, 1e-15);
  EXPECT_EQ(m_script(2.0, Weight::constant({0.0, 1.0}, 1.0), {0.0, 1.0}, 0.25, 0.75), 0.0);
}

TEST(Conditions, PartsCoincideAtPEqualTwo) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double q = 0.01 + 0.98 * u01(rng);
    Problem pr = step_problem(2.0, q, 2.0 * u01(rng), 3.0 * u01(rng));
    const double lam = 5.0 + 100.0 * u01(rng);
    const ConditionReport a = check_thm1_i(pr, lam);
    const ConditionReport b = check_thm1_ii(pr, lam);
    EXPECT_EQ(a.holds, b.holds);
    EXPECT_NEAR(a.lhs, b.lhs, 1e-12 * std::max(1.0, std::abs(a.lhs)));
    EXPECT_NEAR(a.rhs, b.rhs, 1e-12 * std::max(1.0, std::abs(a.rhs)));
  }
}

TEST(Conditions, CorollaryThreshold) {
  const double lam = 4.0 * pi * pi;
  const double mu_star = 12.0 / ((9.0 / 16.0) * lam);
  EXPECT_TRUE(check_cor(step_problem(2.0, 0.5, mu_star * (1.0 - 1e-4), 0.0), lam).holds);
  EXPECT_FALSE(check_cor(step_problem(2.0, 0.5, mu_star * (1.0 + 1e-4), 0.0), lam).holds);
}

TEST(Conditions, CorollaryNeedsZeroC) {
  const ConditionReport r = check_cor(step_problem(2.0, 0.5, 0.1, 1.0), 40.0);
  EXPECT_FALSE(r.holds);
  EXPECT_FALSE(r.applicable);
  EXPECT_FALSE(r.reason.empty());
}

TEST(Conditions, ApplicabilityRanges) {
  // part (i) of the power construction needs p >= 2, part (ii) p <= 2
  EXPECT_FALSE(check_thm1_i(step_problem(1.5, 0.25, 0.01, 0.0), 20.0).applicable);
  EXPECT_FALSE(check_thm1_ii(step_problem(3.0, 1.0, 0.01, 0.0), 20.0).applicable);
  // the hyperbolic constructions need c != 0
  EXPECT_FALSE(check_thm2_i(step_problem(2.0, 0.5, 0.01, 0.0), 20.0).holds);
}

TEST(Conditions, ExpImpliesSinh) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  int exp_holds = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const double p = 2.0 + 2.0 * u01(rng);
    const double q = (p - 1.0) * (0.02 + 0.96 * u01(rng));
    Problem pr = step_problem(p, q, 0.3 * u01(rng), 0.1 + 5.0 * u01(rng));
    const double lam = 10.0 + 200.0 * u01(rng);
    if (check_thm2_ii(pr, lam).holds) {
      ++exp_holds;
      EXPECT_TRUE(check_thm2_i(pr, lam).holds);
    }
  }
  EXPECT_GT(exp_holds, 0);
}

TEST(Conditions, TauIntervalWhenConditionHolds) {
  const Problem pr = step_problem(2.0, 0.5, 0.5, 0.0);
  const double lam = 4.0 * pi * pi;
  ASSERT_TRUE(check_cor(pr, lam).holds);
  const TauInterval t = find_tau_interval(Theorem::Cor, pr, lam);
  EXPECT_LT(t.lo, t.hi);
  EXPECT_GE(t.lo, lam * (1.0 - 1e-12));
  EXPECT_GT(t.eps, 0.0);
}

TEST(Conditions, TauIntervalEmptyWhenConditionFails) {
  const Problem pr = step_problem(2.0, 0.5, 1.0, 0.0);
  EXPECT_THROW(find_tau_interval(Theorem::Cor, pr, 4.0 * pi * pi), Error);
}

TEST(Conditions, CheckAllAndNames) {
  const auto all = check_all(step_problem(2.0, 0.5, 0.5, 0.0), 4.0 * pi * pi);
  ASSERT_EQ(all.size(), 5u);
  for (Theorem t : kAllTheorems) EXPECT_EQ(parse_theorem(to_string(t)), t);
  EXPECT_THROW(parse_theorem("thm3"), Error);
}
