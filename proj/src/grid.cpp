#include "plap/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "plap/error.hpp"

namespace plap {

Grid::Grid(std::vector<double> nodes) {
  if (nodes.size() < 2) fail(ErrorCode::InvalidArgument, "grid needs at least one cell");
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    if (!(nodes[i] < nodes[i + 1])) fail(ErrorCode::InvalidArgument, "grid nodes must be strictly increasing");
  }
  nodes_ = std::make_shared<const std::vector<double>>(std::move(nodes));
}

Grid Grid::uniform(Interval domain, std::size_t cells) {
  if (cells == 0) fail(ErrorCode::InvalidArgument, "grid needs at least one cell");
  std::vector<double> x(cells + 1);
  const double n = static_cast<double>(cells);
  for (std::size_t i = 0; i <= cells; ++i) x[i] = domain.a + domain.length() * (static_cast<double>(i) / n);
  x.back() = domain.b;
  return Grid(std::move(x));
}

Grid Grid::uniform_with(Interval domain, std::size_t cells, std::span<const double> extra) {
  return uniform(domain, cells).with_points(extra);
}

double Grid::max_width() const noexcept {
  double h = 0.0;
  for (std::size_t i = 0; i < cells(); ++i) h = std::max(h, width(i));
  return h;
}

std::size_t Grid::locate(double x) const {
  const auto& n = *nodes_;
  const double slack = 1e-12 * (n.back() - n.front());
  if (x < n.front() - slack || x > n.back() + slack) {
    std::ostringstream os;
    os << "point " << x << " outside grid [" << n.front() << ", " << n.back() << "]";
    fail(ErrorCode::RangeError, os.str());
  }
  auto it = std::lower_bound(n.begin(), n.end(), x);
  std::size_t idx = static_cast<std::size_t>(it - n.begin());
  if (idx == 0) return 0;
  return std::min(idx - 1, cells() - 1);
}

std::ptrdiff_t Grid::find_node(double x, double rel_tol) const {
  const auto& n = *nodes_;
  const double tol = rel_tol * (n.back() - n.front());
  auto it = std::lower_bound(n.begin(), n.end(), x - tol);
  if (it != n.end() && std::abs(*it - x) <= tol) return it - n.begin();
  return -1;
}

Grid Grid::restricted(Interval window) const {
  std::vector<double> pts{window.a};
  for (double x : *nodes_) {
    if (x > window.a && x < window.b) pts.push_back(x);
  }
  pts.push_back(window.b);
  const double scale = window.length();
  std::vector<double> out;
  for (double x : pts) {
    if (!out.empty() && x - out.back() <= 1e-12 * scale) {
      // Keep the window endpoint itself rather than a node rounding onto it.
      if (x == window.b) out.back() = x;
      continue;
    }
    out.push_back(x);
  }
  return Grid(std::move(out));
}

Grid Grid::with_points(std::span<const double> extra) const {
  const auto& n = *nodes_;
  const double a = n.front(), b = n.back();
  const double tol = 1e-12 * (b - a);
  std::vector<double> pts = n;
  for (double x : extra) {
    if (x <= a + tol || x >= b - tol) continue;
    auto it = std::lower_bound(pts.begin(), pts.end(), x);
    const bool near_next = it != pts.end() && std::abs(*it - x) <= tol;
    const bool near_prev = it != pts.begin() && std::abs(*std::prev(it) - x) <= tol;
    if (near_next) {
      *it = x;
    } else if (near_prev) {
      *std::prev(it) = x;
    } else {
      pts.insert(it, x);
    }
  }
  return Grid(std::move(pts));
}

Grid Grid::refined(std::size_t factor) const {
  if (factor == 0) fail(ErrorCode::InvalidArgument, "refinement factor must be positive");
  const auto& n = *nodes_;
  std::vector<double> pts;
  pts.reserve(cells() * factor + 1);
  for (std::size_t i = 0; i < cells(); ++i) {
    const double h = n[i + 1] - n[i];
    for (std::size_t s = 0; s < factor; ++s) pts.push_back(n[i] + h * (static_cast<double>(s) / static_cast<double>(factor)));
  }
  pts.push_back(n.back());
  return Grid(std::move(pts));
}

// ---------------------------------------------------------------------------

GridFunction::GridFunction(Grid grid, std::vector<double> values) : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.size()) fail(ErrorCode::InvalidArgument, "grid function needs one value per node");
}

GridFunction GridFunction::sample(const Grid& grid, const std::function<double(double)>& f) {
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) v[i] = f(grid[i]);
  return {grid, std::move(v)};
}

GridFunction GridFunction::zero(const Grid& grid) { return {grid, std::vector<double>(grid.size(), 0.0)}; }

double GridFunction::operator()(double x) const {
  const std::size_t c = grid_.locate(x);
  const double t = (x - grid_[c]) / grid_.width(c);
  return values_[c] + t * (values_[c + 1] - values_[c]);
}

double GridFunction::max() const noexcept { return *std::max_element(values_.begin(), values_.end()); }
double GridFunction::min() const noexcept { return *std::min_element(values_.begin(), values_.end()); }
std::size_t GridFunction::argmax() const noexcept {
  return static_cast<std::size_t>(std::max_element(values_.begin(), values_.end()) - values_.begin());
}

GridFunction GridFunction::scaled(double factor) const {
  std::vector<double> v = values_;
  for (double& x : v) x *= factor;
  return {grid_, std::move(v)};
}

GridFunction GridFunction::resampled(const Grid& target, double outside) const {
  const Interval iv = grid_.interval();
  std::vector<double> v(target.size());
  for (std::size_t i = 0; i < target.size(); ++i) {
    const double x = target[i];
    v[i] = (x < iv.a || x > iv.b) ? outside : (*this)(x);
  }
  return {target, std::move(v)};
}

void write_csv(std::ostream& os, const GridFunction& f) {
  os << "x,u\n";
  char buf[64];
  for (std::size_t i = 0; i < f.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", f.grid()[i], f[i]);
    os << buf;
  }
}

void write_csv(const std::string& path, const GridFunction& f) {
  std::ofstream os(path);
  if (!os) fail(ErrorCode::ConfigError, "cannot open " + path + " for writing");
  write_csv(os, f);
}

GridFunction read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) fail(ErrorCode::ConfigError, "empty CSV input");
  if (line.rfind("x,", 0) != 0) fail(ErrorCode::ConfigError, "CSV header must start with 'x,'");
  std::vector<double> xs, us;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) fail(ErrorCode::ConfigError, "CSV line " + std::to_string(lineno) + " has no comma");
    try {
      xs.push_back(std::stod(line.substr(0, comma)));
      us.push_back(std::stod(line.substr(comma + 1)));
    } catch (const std::exception&) {
      fail(ErrorCode::ConfigError, "CSV line " + std::to_string(lineno) + " is not numeric");
    }
  }
  return {Grid(std::move(xs)), std::move(us)};
}

GridFunction read_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) fail(ErrorCode::ConfigError, "cannot open " + path);
  return read_csv(is);
}

}  // namespace plap
