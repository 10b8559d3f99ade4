#include "plap/quadrature.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>

#include "plap/error.hpp"

namespace plap {

namespace {

template <std::size_t N>
QuadRule make_rule() {
  using G = boost::math::quadrature::gauss<double, N>;
  const auto& abscissa = G::abscissa();
  const auto& weights = G::weights();
  QuadRule r;
  // Boost stores the non-negative half of the symmetric rule on [-1, 1].
  for (std::size_t i = 0; i < abscissa.size(); ++i) {
    const double s = abscissa[i];
    const double w = weights[i];
    if (s == 0.0) {
      r.x.push_back(0.5);
      r.w.push_back(0.5 * w);
    } else {
      r.x.push_back(0.5 * (1.0 - s));
      r.w.push_back(0.5 * w);
      r.x.push_back(0.5 * (1.0 + s));
      r.w.push_back(0.5 * w);
    }
  }
  std::vector<std::size_t> order(r.x.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return r.x[i] < r.x[j]; });
  QuadRule sorted;
  for (std::size_t i : order) {
    sorted.x.push_back(r.x[i]);
    sorted.w.push_back(r.w[i]);
  }
  return sorted;
}

constexpr double kGradeRatio = 0.5;
constexpr double kFloor = 1e-15;

void append_plain(double lo, double hi, const QuadRule& base, std::vector<double>& xs, std::vector<double>& ws) {
  const double h = hi - lo;
  for (std::size_t k = 0; k < base.x.size(); ++k) {
    xs.push_back(lo + h * base.x[k]);
    ws.push_back(h * base.w[k]);
  }
}

// |u| is small at `lo` side when toward_lo, with the zero of u at distance t0 (cell units) beyond it.
void append_graded(double lo, double hi, double t0, bool toward_lo, const QuadRule& base, std::vector<double>& xs,
                   std::vector<double>& ws) {
  const double h = hi - lo;
  double outer = 1.0;
  const double stop = std::max(t0, kFloor);
  while (true) {
    const double inner = outer * kGradeRatio;
    const bool last = inner <= stop;
    const double i0 = last ? 0.0 : inner;
    // Fractions measured from the singular end.
    const double a = toward_lo ? lo + h * i0 : hi - h * outer;
    const double b = toward_lo ? lo + h * outer : hi - h * i0;
    append_plain(a, b, base, xs, ws);
    if (last) break;
    outer = inner;
  }
}

}  // namespace

const QuadRule& gauss_legendre(std::size_t points) {
  static const QuadRule r2 = make_rule<2>(), r3 = make_rule<3>(), r4 = make_rule<4>(), r5 = make_rule<5>(),
                        r6 = make_rule<6>(), r8 = make_rule<8>(), r10 = make_rule<10>(), r12 = make_rule<12>(),
                        r16 = make_rule<16>(), r20 = make_rule<20>();
  switch (points) {
    case 2: return r2;
    case 3: return r3;
    case 4: return r4;
    case 5: return r5;
    case 6: return r6;
    case 8: return r8;
    case 10: return r10;
    case 12: return r12;
    case 16: return r16;
    case 20: return r20;
    default: fail(ErrorCode::InvalidArgument, "unsupported Gauss-Legendre point count " + std::to_string(points));
  }
}

double integrate(const std::function<double(double)>& f, double lo, double hi, std::size_t cells, std::size_t points) {
  if (hi < lo) fail(ErrorCode::RangeError, "integration bounds reversed");
  if (hi == lo || cells == 0) return 0.0;
  const QuadRule& rule = gauss_legendre(points);
  const double h = (hi - lo) / static_cast<double>(cells);
  double total = 0.0;
  for (std::size_t c = 0; c < cells; ++c) {
    const double a = lo + h * static_cast<double>(c);
    double part = 0.0;
    for (std::size_t k = 0; k < rule.x.size(); ++k) part += rule.w[k] * f(a + h * rule.x[k]);
    total += h * part;
  }
  return total;
}

double integrate(const std::function<double(double)>& f, const Grid& grid, double lo, double hi, std::size_t points) {
  if (hi < lo) fail(ErrorCode::RangeError, "integration bounds reversed");
  const QuadRule& rule = gauss_legendre(points);
  double total = 0.0;
  for (std::size_t c = 0; c < grid.cells(); ++c) {
    const double a = std::max(lo, grid[c]), b = std::min(hi, grid[c + 1]);
    if (!(a < b)) continue;
    double part = 0.0;
    for (std::size_t k = 0; k < rule.x.size(); ++k) part += rule.w[k] * f(a + (b - a) * rule.x[k]);
    total += (b - a) * part;
  }
  return total;
}

double integrate(const GridFunction& f, double lo, double hi) {
  const Grid& g = f.grid();
  double total = 0.0;
  for (std::size_t c = 0; c < g.cells(); ++c) {
    const double a = std::max(lo, g[c]), b = std::min(hi, g[c + 1]);
    if (!(a < b)) continue;
    total += 0.5 * (b - a) * (f(a) + f(b));
  }
  return total;
}

void append_power_rule(double lo, double hi, double u_lo, double u_hi, const QuadRule& base, std::vector<double>& xs,
                       std::vector<double>& ws) {
  if ((u_lo < 0.0 && u_hi > 0.0) || (u_lo > 0.0 && u_hi < 0.0)) {
    const double root = lo + (hi - lo) * (u_lo / (u_lo - u_hi));
    if (root > lo && root < hi) {
      append_power_rule(lo, root, u_lo, 0.0, base, xs, ws);
      append_power_rule(root, hi, 0.0, u_hi, base, xs, ws);
      return;
    }
  }
  const double alo = std::abs(u_lo), ahi = std::abs(u_hi);
  const double small = std::min(alo, ahi), big = std::max(alo, ahi);
  if (big == 0.0 || small >= kGradeRatio * big) {
    append_plain(lo, hi, base, xs, ws);
    return;
  }
  const double t0 = small / (big - small);
  append_graded(lo, hi, t0, alo < ahi, base, xs, ws);
}

}  // namespace plap
