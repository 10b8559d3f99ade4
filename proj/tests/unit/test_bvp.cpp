#include <gtest/gtest.h>

#include <cmath>

#include "plap/bvp.hpp"
#include "plap/error.hpp"

using namespace plap;

namespace {

double closed_form(double p, double x) {
  const double pc = p / (p - 1.0);
  return (std::pow(0.5, pc) - std::pow(std::abs(0.5 - x), pc)) / pc;
}

}  // namespace

TEST(Bvp, UnitLoadClosedForm) {
  const Interval I{0.0, 1.0};
  for (double p : {1.5, 2.0, 3.0, 4.0}) {
    const GridFunction v = solve_g(p, Weight::constant(I, 0.0), Weight::constant(I, 1.0), I, 2048);
    double err = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) err = std::max(err, std::abs(v[i] - closed_form(p, v.grid()[i])));
    EXPECT_LT(err, 1e-4) << "p = " << p;
  }
}

TEST(Bvp, ReactionTermLinearCase) {
  // -v'' + v = 1: v = 1 - cosh(x - 1/2) / cosh(1/2)
  const Interval I{0.0, 1.0};
  const GridFunction v = solve_g(2.0, Weight::constant(I, 1.0), Weight::constant(I, 1.0), I, 1024);
  double err = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double x = v.grid()[i];
    err = std::max(err, std::abs(v[i] - (1.0 - std::cosh(x - 0.5) / std::cosh(0.5))));
  }
  EXPECT_LT(err, 1e-6);
}

TEST(Bvp, ResidualAndHistory) {
  const Interval I{0.0, 1.0};
  const Grid g = Grid::uniform(I, 512);
  const BvpResult r = solve_g_detailed(3.0, Weight::constant(I, 0.0), Weight::constant(I, 1.0), g);
  EXPECT_LE(r.residual, 1e-10);
  EXPECT_NEAR(residual_g(r.v, 3.0, Weight::constant(I, 0.0), Weight::constant(I, 1.0)), r.residual, 1e-9);
  for (std::size_t k = 1; k < r.energy_history.size(); ++k) {
    EXPECT_LE(r.energy_history[k], r.energy_history[k - 1] + 1e-14);
  }
}

TEST(Bvp, ComparisonPrinciple) {
  // g >= 0 gives v >= 0; a sign-changing load gives a sign-changing solution
  const Interval I{0.0, 1.0};
  const double br[] = {0.5};
  const double pos[] = {0.0, 2.0};
  const GridFunction v = solve_g(2.5, Weight::constant(I, 0.0), Weight::step(I, br, pos), I, 512);
  EXPECT_GE(v.min(), -1e-14);
  const double mixed[] = {-1.0, 1.0};
  const GridFunction w = solve_g(2.5, Weight::constant(I, 0.0), Weight::step(I, br, mixed), I, 512);
  EXPECT_LT(w.min(), 0.0);
  EXPECT_GT(w.max(), 0.0);
}

TEST(Bvp, Uniqueness) {
  // two different grids agree at shared nodes to discretization accuracy
  const Interval I{0.0, 1.0};
  const GridFunction a = solve_g(1.5, Weight::constant(I, 0.5), Weight::constant(I, 1.0), I, 1024);
  const GridFunction b = solve_g(1.5, Weight::constant(I, 0.5), Weight::constant(I, 1.0), I, 2048);
  for (std::size_t i = 0; i < a.size(); i += 64) EXPECT_NEAR(a[i], b[2 * i], 1e-5);
}
