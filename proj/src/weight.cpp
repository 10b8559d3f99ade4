#include "plap/weight.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "plap/error.hpp"

namespace plap {

Interval::Interval(double lo, double hi) : a(lo), b(hi) {
  if (!(lo < hi)) {
    std::ostringstream os;
    os << "interval requires a < b, got (" << lo << ", " << hi << ")";
    fail(ErrorCode::InvalidArgument, os.str());
  }
}

// ---------------------------------------------------------------------------
// Polynomial

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

Polynomial Polynomial::constant(double value) { return Polynomial({value}); }

double Polynomial::operator()(double t) const noexcept {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<double> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
  return Polynomial(std::move(d));
}

Polynomial Polynomial::antiderivative() const {
  if (coeffs_.empty()) return {};
  std::vector<double> a(coeffs_.size() + 1, 0.0);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) a[k + 1] = coeffs_[k] / static_cast<double>(k + 1);
  return Polynomial(std::move(a));
}

Polynomial Polynomial::scaled(double factor) const {
  std::vector<double> c = coeffs_;
  for (double& v : c) v *= factor;
  return Polynomial(std::move(c));
}

Polynomial Polynomial::shifted(double shift) const {
  std::vector<double> c = coeffs_;
  const std::size_t n = c.size();
  // Repeated synthetic division (Taylor shift).
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = n - 1; j-- > i;) c[j] += shift * c[j + 1];
  }
  return Polynomial(std::move(c));
}

Polynomial Polynomial::reflected() const {
  std::vector<double> c = coeffs_;
  for (std::size_t k = 1; k < c.size(); k += 2) c[k] = -c[k];
  return Polynomial(std::move(c));
}

namespace {

double bisect_root(const Polynomial& f, double lo, double hi, double flo) {
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::vector<double> Polynomial::roots_in(double lo, double hi) const {
  std::vector<double> roots;
  if (coeffs_.size() <= 1 || !(lo < hi)) return roots;
  if (coeffs_.size() == 2) {
    const double r = -coeffs_[0] / coeffs_[1];
    if (lo < r && r < hi) roots.push_back(r);
    return roots;
  }
  std::vector<double> knots{lo};
  for (double c : derivative().roots_in(lo, hi)) knots.push_back(c);
  knots.push_back(hi);
  for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
    const double l = knots[k], r = knots[k + 1];
    const double fl = (*this)(l), fr = (*this)(r);
    if (k > 0 && fl == 0.0) {
      roots.push_back(l);
      continue;
    }
    if (fl != 0.0 && fr != 0.0 && ((fl > 0.0) != (fr > 0.0))) roots.push_back(bisect_root(*this, l, r, fl));
  }
  // Touching roots at interior critical points whose value rounds to zero are covered above;
  // duplicates can appear when a critical point is itself a root.
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

std::pair<double, double> Polynomial::range_on(double lo, double hi) const {
  double mx = std::max((*this)(lo), (*this)(hi));
  double mn = std::min((*this)(lo), (*this)(hi));
  for (double c : derivative().roots_in(lo, hi)) {
    const double v = (*this)(c);
    mx = std::max(mx, v);
    mn = std::min(mn, v);
  }
  return {mx, mn};
}

// ---------------------------------------------------------------------------
// Weight

Weight::Weight(std::vector<WeightPiece> pieces) : pieces_(std::move(pieces)) {
  if (pieces_.empty()) fail(ErrorCode::InvalidArgument, "weight needs at least one piece");
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    if (!(pieces_[i].lo < pieces_[i].hi)) fail(ErrorCode::InvalidArgument, "weight piece with empty interval");
    if (i > 0 && pieces_[i].lo != pieces_[i - 1].hi) {
      std::ostringstream os;
      os.precision(17);
      os << "weight pieces must tile the domain: gap/overlap at " << pieces_[i - 1].hi << " vs " << pieces_[i].lo;
      fail(ErrorCode::InvalidArgument, os.str());
    }
  }
  refresh_bounds();
}

void Weight::refresh_bounds() {
  sup_ = -std::numeric_limits<double>::infinity();
  inf_ = std::numeric_limits<double>::infinity();
  for (const auto& pc : pieces_) {
    const auto [mx, mn] = pc.poly.range_on(0.0, pc.hi - pc.lo);
    sup_ = std::max(sup_, mx);
    inf_ = std::min(inf_, mn);
  }
}

Weight Weight::constant(Interval domain, double value) {
  return Weight({WeightPiece{domain.a, domain.b, Polynomial::constant(value)}});
}

Weight Weight::step(Interval domain, std::span<const double> breaks, std::span<const double> values) {
  if (values.size() != breaks.size() + 1) fail(ErrorCode::InvalidArgument, "step weight needs one more value than breaks");
  std::vector<WeightPiece> pieces;
  double lo = domain.a;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double hi = i < breaks.size() ? breaks[i] : domain.b;
    if (!(lo < hi)) fail(ErrorCode::InvalidArgument, "step breaks must increase strictly inside the domain");
    pieces.push_back({lo, hi, Polynomial::constant(values[i])});
    lo = hi;
  }
  return Weight(std::move(pieces));
}

Weight Weight::from_global(std::span<const GlobalPiece> pieces) {
  std::vector<WeightPiece> out;
  out.reserve(pieces.size());
  for (const auto& gp : pieces) out.push_back({gp.from, gp.to, Polynomial(gp.poly).shifted(gp.from)});
  return Weight(std::move(out));
}

Weight Weight::interpolate_linear(Interval domain, std::size_t n, const std::function<double(double)>& f) {
  if (n == 0) fail(ErrorCode::InvalidArgument, "interpolation needs at least one piece");
  std::vector<double> x(n + 1), y(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    x[i] = i == n ? domain.b : domain.a + domain.length() * static_cast<double>(i) / static_cast<double>(n);
    y[i] = f(x[i]);
  }
  std::vector<WeightPiece> pieces;
  pieces.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    pieces.push_back({x[i], x[i + 1], Polynomial({y[i], (y[i + 1] - y[i]) / (x[i + 1] - x[i])})});
  }
  return Weight(std::move(pieces));
}

std::size_t Weight::locate(double x) const {
  const double a = pieces_.front().lo, b = pieces_.back().hi;
  const double slack = 1e-12 * (b - a);
  if (x < a - slack || x > b + slack) {
    std::ostringstream os;
    os << "point " << x << " outside weight support [" << a << ", " << b << "]";
    fail(ErrorCode::RangeError, os.str());
  }
  auto it = std::lower_bound(pieces_.begin(), pieces_.end(), x,
                             [](const WeightPiece& pc, double v) { return pc.hi < v; });
  if (it == pieces_.end()) return pieces_.size() - 1;
  return static_cast<std::size_t>(it - pieces_.begin());
}

std::size_t Weight::locate_cell(double lo, double hi) const { return locate(0.5 * (lo + hi)); }

double Weight::operator()(double x) const { return eval_piece(locate(x), x); }

std::vector<double> Weight::breakpoints() const {
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < pieces_.size(); ++i) out.push_back(pieces_[i].hi);
  return out;
}

namespace {

// Splits every piece at interior sign changes and multiplies the positive stretches by `pos`,
// the negative ones by `neg`.
Weight sign_part(const std::vector<WeightPiece>& pieces, double pos, double neg) {
  std::vector<WeightPiece> out;
  for (const auto& pc : pieces) {
    const double len = pc.hi - pc.lo;
    std::vector<double> cuts{0.0};
    for (double r : pc.poly.roots_in(0.0, len)) cuts.push_back(r);
    cuts.push_back(len);
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      const double lo = pc.lo + cuts[k];
      const double hi = k + 2 == cuts.size() ? pc.hi : pc.lo + cuts[k + 1];
      if (!(lo < hi)) continue;
      const double start = lo - pc.lo;
      const Polynomial local = pc.poly.shifted(start);
      const double mid = local(0.5 * (hi - lo));
      const double factor = mid > 0.0 ? pos : mid < 0.0 ? neg : 0.0;
      Polynomial poly = factor != 0.0 ? local.scaled(factor) : Polynomial{};
      out.push_back({out.empty() ? lo : out.back().hi, hi, std::move(poly)});
    }
  }
  return Weight(std::move(out));
}

}  // namespace

Weight Weight::positive_part() const { return sign_part(pieces_, 1.0, 0.0); }
Weight Weight::negative_part() const { return sign_part(pieces_, 0.0, -1.0); }
Weight Weight::sign_scaled(double pos, double neg) const { return sign_part(pieces_, pos, neg); }

Weight Weight::scaled(double factor) const {
  std::vector<WeightPiece> out = pieces_;
  for (auto& pc : out) pc.poly = pc.poly.scaled(factor);
  return Weight(std::move(out));
}

Weight Weight::plus_constant(double value) const {
  std::vector<WeightPiece> out = pieces_;
  for (auto& pc : out) {
    std::vector<double> c = pc.poly.coeffs();
    if (c.empty()) c.push_back(0.0);
    c[0] += value;
    pc.poly = Polynomial(std::move(c));
  }
  return Weight(std::move(out));
}

Weight Weight::reflected() const {
  const double a = pieces_.front().lo, b = pieces_.back().hi;
  std::vector<WeightPiece> out;
  out.reserve(pieces_.size());
  for (auto it = pieces_.rbegin(); it != pieces_.rend(); ++it) {
    const double len = it->hi - it->lo;
    const double lo = out.empty() ? a : out.back().hi;
    const double hi = std::next(it) == pieces_.rend() ? b : (a + b) - it->lo;
    out.push_back({lo, hi, it->poly.reflected().shifted(-len)});
  }
  return Weight(std::move(out));
}

double Weight::sup_norm() const noexcept { return std::max(std::abs(sup_), std::abs(inf_)); }

double Weight::integral(double lo, double hi) const {
  const double a = pieces_.front().lo, b = pieces_.back().hi;
  lo = std::max(lo, a);
  hi = std::min(hi, b);
  if (!(lo < hi)) return 0.0;
  double total = 0.0;
  for (std::size_t i = locate(lo); i < pieces_.size(); ++i) {
    const auto& pc = pieces_[i];
    if (pc.lo >= hi) break;
    const double l = std::max(lo, pc.lo) - pc.lo;
    const double r = std::min(hi, pc.hi) - pc.lo;
    if (r <= l) continue;
    const Polynomial anti = pc.poly.antiderivative();
    total += anti(r) - anti(l);
  }
  return total;
}

double Weight::positive_mass(double lo, double hi) const { return positive_part().integral(lo, hi); }

Weight Weight::cumulative_from_left() const {
  std::vector<WeightPiece> out;
  out.reserve(pieces_.size());
  double acc = 0.0;
  for (const auto& pc : pieces_) {
    const Polynomial anti = pc.poly.antiderivative();
    std::vector<double> c = anti.coeffs();
    if (c.empty()) c.push_back(0.0);
    c[0] += acc;
    out.push_back({pc.lo, pc.hi, Polynomial(std::move(c))});
    acc += anti(pc.hi - pc.lo);
  }
  return Weight(std::move(out));
}

Weight Weight::cumulative_to_right() const { return reflected().cumulative_from_left().reflected(); }

std::pair<double, double> Weight::range_on(double lo, double hi) const {
  double mx = -std::numeric_limits<double>::infinity();
  double mn = std::numeric_limits<double>::infinity();
  for (const auto& pc : pieces_) {
    const double l = std::max(lo, pc.lo), r = std::min(hi, pc.hi);
    if (!(l < r)) continue;
    const auto [pmx, pmn] = pc.poly.range_on(l - pc.lo, r - pc.lo);
    mx = std::max(mx, pmx);
    mn = std::min(mn, pmn);
  }
  if (mx < mn) fail(ErrorCode::RangeError, "empty range query on weight");
  return {mx, mn};
}

std::vector<double> merge_points(std::vector<double> points, double scale, double rel_tol) {
  std::sort(points.begin(), points.end());
  std::vector<double> out;
  const double tol = rel_tol * scale;
  for (double x : points) {
    if (out.empty() || x - out.back() > tol) out.push_back(x);
  }
  return out;
}

}  // namespace plap
