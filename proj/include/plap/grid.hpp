#pragma once

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "plap/weight.hpp"

namespace plap {

inline constexpr std::size_t kDefaultCells = 2048;

/// Strictly increasing mesh covering an interval. Cheap to copy.
class Grid {
 public:
  explicit Grid(std::vector<double> nodes);

  static Grid uniform(Interval domain, std::size_t cells = kDefaultCells);
  /// Uniform grid with `extra` points (breakpoints, window ends) inserted as nodes.
  static Grid uniform_with(Interval domain, std::size_t cells, std::span<const double> extra);

  std::size_t cells() const noexcept { return nodes_->size() - 1; }
  std::size_t size() const noexcept { return nodes_->size(); }
  std::span<const double> nodes() const noexcept { return *nodes_; }
  double operator[](std::size_t i) const noexcept { return (*nodes_)[i]; }
  double width(std::size_t cell) const noexcept { return (*nodes_)[cell + 1] - (*nodes_)[cell]; }
  Interval interval() const { return {nodes_->front(), nodes_->back()}; }
  double max_width() const noexcept;

  /// Cell index containing x (the left cell at interior nodes).
  std::size_t locate(double x) const;
  /// Index of a node equal to x within rel_tol * length, if any.
  std::ptrdiff_t find_node(double x, double rel_tol = 1e-12) const;

  /// Nodes of this grid inside [lo, hi] together with lo and hi themselves.
  Grid restricted(Interval window) const;
  /// Grid with extra points inserted (near duplicates dropped).
  Grid with_points(std::span<const double> extra) const;
  /// Every cell split into `factor` equal parts.
  Grid refined(std::size_t factor) const;

 private:
  std::shared_ptr<const std::vector<double>> nodes_;
};

/// Continuous piecewise-linear function given by nodal values.
class GridFunction {
 public:
  GridFunction(Grid grid, std::vector<double> values);
  static GridFunction sample(const Grid& grid, const std::function<double(double)>& f);
  static GridFunction zero(const Grid& grid);

  const Grid& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  std::size_t size() const noexcept { return values_.size(); }

  /// Linear interpolation; throws range-error outside the grid.
  double operator()(double x) const;
  double slope(std::size_t cell) const noexcept {
    return (values_[cell + 1] - values_[cell]) / grid_.width(cell);
  }
  double left_derivative(std::size_t node) const { return slope(node - 1); }
  double right_derivative(std::size_t node) const { return slope(node); }

  double max() const noexcept;
  double min() const noexcept;
  std::size_t argmax() const noexcept;

  GridFunction scaled(double factor) const;
  /// Values interpolated onto another grid; points outside this grid's interval get `outside`.
  GridFunction resampled(const Grid& target, double outside = 0.0) const;

 private:
  Grid grid_;
  std::vector<double> values_;
};

/// Two-column CSV with header `x,u`, values printed with 17 significant digits.
void write_csv(std::ostream& os, const GridFunction& f);
void write_csv(const std::string& path, const GridFunction& f);
GridFunction read_csv(std::istream& is);
GridFunction read_csv(const std::string& path);

}  // namespace plap
