#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace plap {

struct Interval {
  double a = 0.0;
  double b = 1.0;

  Interval() = default;
  Interval(double lo, double hi);

  double length() const noexcept { return b - a; }
  bool contains(double x) const noexcept { return a <= x && x <= b; }
  bool contains(const Interval& other) const noexcept { return a <= other.a && other.b <= b; }
};

/// Polynomial in a local variable t, stored as monomial coefficients c0 + c1 t + ...
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coeffs);
  static Polynomial constant(double value);

  double operator()(double t) const noexcept;

  /// Degree of the trimmed representation; the zero polynomial has degree 0.
  std::size_t degree() const noexcept { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  const std::vector<double>& coeffs() const noexcept { return coeffs_; }

  Polynomial derivative() const;
  /// Antiderivative vanishing at t = 0.
  Polynomial antiderivative() const;
  Polynomial scaled(double factor) const;
  /// r(t) = this(t + shift).
  Polynomial shifted(double shift) const;
  /// r(t) = this(-t).
  Polynomial reflected() const;

  /// Sign-changing and touching real roots in the open interval (lo, hi), ascending.
  std::vector<double> roots_in(double lo, double hi) const;
  /// Max and min over the closed interval [lo, hi], from endpoints and critical points.
  std::pair<double, double> range_on(double lo, double hi) const;

 private:
  std::vector<double> coeffs_;
};

struct WeightPiece {
  double lo;
  double hi;
  Polynomial poly;  // in t = x - lo
};

/// Piecewise-polynomial coefficient on an interval. Pieces tile the support in order;
/// at a breakpoint the left piece is used.
class Weight {
 public:
  Weight() = default;
  explicit Weight(std::vector<WeightPiece> pieces);

  static Weight constant(Interval domain, double value);
  /// values.size() == breaks.size() + 1; breaks strictly inside the domain, increasing.
  static Weight step(Interval domain, std::span<const double> breaks, std::span<const double> values);
  /// One piece per (lo, hi, coefficients-in-global-x) triple.
  struct GlobalPiece {
    double from;
    double to;
    std::vector<double> poly;
  };
  static Weight from_global(std::span<const GlobalPiece> pieces);
  /// Continuous piecewise-linear interpolant of f on `pieces` uniform pieces.
  static Weight interpolate_linear(Interval domain, std::size_t pieces, const std::function<double(double)>& f);

  Interval support() const noexcept { return {pieces_.front().lo, pieces_.back().hi}; }
  const std::vector<WeightPiece>& pieces() const noexcept { return pieces_; }
  std::size_t size() const noexcept { return pieces_.size(); }

  double operator()(double x) const;
  std::size_t locate(double x) const;
  /// Piece containing the open cell (lo, hi); the cell must not straddle a breakpoint.
  std::size_t locate_cell(double lo, double hi) const;
  double eval_piece(std::size_t index, double x) const noexcept {
    const auto& pc = pieces_[index];
    return pc.poly(x - pc.lo);
  }

  /// Interior breakpoints, ascending.
  std::vector<double> breakpoints() const;

  Weight positive_part() const;
  Weight negative_part() const;
  /// pos * w+ - neg * w-, split at sign changes.
  Weight sign_scaled(double pos, double neg) const;
  Weight scaled(double factor) const;
  Weight plus_constant(double value) const;
  /// x -> w(a + b - x) on the same support.
  Weight reflected() const;

  double ess_sup() const noexcept { return sup_; }
  double ess_inf() const noexcept { return inf_; }
  double sup_norm() const noexcept;
  bool is_zero() const noexcept { return sup_ == 0.0 && inf_ == 0.0; }

  /// Exact integral over [lo, hi] (clamped to the support).
  double integral(double lo, double hi) const;
  /// Exact integral of max(w, 0) over [lo, hi].
  double positive_mass(double lo, double hi) const;
  /// x -> ∫_a^x w, as an exact piecewise polynomial.
  Weight cumulative_from_left() const;
  /// x -> ∫_x^b w, as an exact piecewise polynomial.
  Weight cumulative_to_right() const;

  /// Essential sup/inf restricted to [lo, hi].
  std::pair<double, double> range_on(double lo, double hi) const;

 private:
  void refresh_bounds();

  std::vector<WeightPiece> pieces_;
  double sup_ = 0.0;
  double inf_ = 0.0;
};

/// Merges sorted-or-not points into an ascending list, dropping near duplicates
/// (relative to `scale`).
std::vector<double> merge_points(std::vector<double> points, double scale, double rel_tol = 1e-12);

}  // namespace plap
