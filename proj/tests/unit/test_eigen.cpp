#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <numbers>

#include "plap/eigen.hpp"
#include "plap/error.hpp"

using namespace plap;

namespace {

constexpr double pi = std::numbers::pi;

double pi_p(double p) { return 2.0 * pi / (p * std::sin(pi / p)); }

double lambda_unit(double p, double len = 1.0, double c = 0.0, double mval = 1.0) {
  const Interval I{0.0, len};
  return principal_eigenvalue(p, Weight::constant(I, c), Weight::constant(I, mval), I).lambda1;
}

}  // namespace

TEST(Eigen, LaplacianOnUnitInterval) {
  EXPECT_NEAR(lambda_unit(2.0) / (pi * pi), 1.0, 1e-6);
}

TEST(Eigen, PLaplacianClosedForm) {
  for (double p : {1.5, 3.0, 4.0}) {
    const double exact = (p - 1.0) * std::pow(pi_p(p), p);
    EXPECT_NEAR(lambda_unit(p) / exact, 1.0, 1e-5) << "p = " << p;
  }
}

TEST(Eigen, IntervalScaling) {
  // lambda(0, L) = lambda(0, 1) / L^p
  for (double p : {2.0, 3.0}) {
    EXPECT_NEAR(lambda_unit(p, 0.5) / (lambda_unit(p) * std::pow(2.0, p)), 1.0, 1e-6);
  }
}

TEST(Eigen, ConstantPotentialShift) {
  // p = 2, m = 1: lambda = pi^2 + c
  EXPECT_NEAR(lambda_unit(2.0, 1.0, 3.0), pi * pi + 3.0, 1e-5);
}

TEST(Eigen, WeightHomogeneity) {
  EigenOptions opt;
  opt.tol = 1e-13;
  const Interval I{0.0, 1.0};
  const Weight::GlobalPiece pc[] = {{0.0, 1.0, {0.5, 1.0, -0.3}}};
  const Weight m = Weight::from_global(pc);
  const Weight c = Weight::constant(I, 0.0);
  const double base = principal_eigenvalue(3.0, c, m, I, opt).lambda1;
  for (double tau : {0.5, 2.0, 10.0}) {
    const double scaled = principal_eigenvalue(3.0, c, m.scaled(tau), I, opt).lambda1;
    EXPECT_NEAR(scaled * tau / base, 1.0, 1e-9) << tau;
  }
}

TEST(Eigen, EigenfunctionIsPositiveAndNormalized) {
  const Interval I{0.25, 0.75};
  const EigenPair e = principal_eigenvalue(2.0, Weight::constant(I, 0.0), Weight::constant(I, 1.0), I);
  EXPECT_NEAR(e.phi.max(), 1.0, 1e-12);
  for (std::size_t i = 1; i + 1 < e.phi.size(); ++i) EXPECT_GT(e.phi[i], 0.0);
  EXPECT_NEAR(e.value(0.5), 1.0, 1e-6);
  EXPECT_NEAR(e.value(0.375), std::sin(pi / 4.0), 1e-6);
  EXPECT_EQ(e.value(0.1), 0.0);
  EXPECT_NEAR(e.rayleigh / e.lambda1, 1.0, 1e-4);
}

TEST(Eigen, ShootingFirstZero) {
  const Interval I{0.0, 1.0};
  const Weight c = Weight::constant({0.0, 2.0}, 0.0);
  const Weight m = Weight::constant({0.0, 2.0}, 1.0);
  const ShootResult r = shoot(pi * pi, 2.0, c, m, Interval{0.0, 2.0}, 4000);
  ASSERT_TRUE(r.first_zero.has_value());
  EXPECT_NEAR(*r.first_zero, 1.0, 1e-6);
  (void)I;
}

TEST(Eigen, RuntimeIsDeskScale) {
  const auto t0 = std::chrono::steady_clock::now();
  lambda_unit(3.0);
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  EXPECT_LT(s, 2.0);
}

TEST(Eigen, NormalizeSup) {
  const Grid g = Grid::uniform({0.0, 1.0}, 4);
  const GridFunction f(g, {0.0, 1.0, 4.0, 2.0, 0.0});
  const GridFunction n = normalize_sup(f);
  EXPECT_EQ(n[2], 1.0);
  EXPECT_DOUBLE_EQ(n[1], 0.25);
}
