#include "hyperstab/grid.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "hyperstab/error.hpp"

namespace hyperstab {

Grid Grid::uniform(double width, double height, int nx, int ny) {
  Grid g;
  g.nx = nx;
  g.ny = ny;
  g.dx = width / nx;
  g.dy = height / ny;
  g.validate();
  return g;
}

Grid Grid::with_spacing(double width, double height, double h) {
  if (!(h > 0.0)) throw Error(ErrorKind::InvalidInput, "cell size must be positive");
  const double fx = width / h;
  const double fy = height / h;
  const int nx = static_cast<int>(std::lround(fx));
  const int ny = static_cast<int>(std::lround(fy));
  if (std::abs(fx - nx) > 1e-9 * fx || std::abs(fy - ny) > 1e-9 * fy) {
    throw Error(ErrorKind::InvalidInput, "cell size " + std::to_string(h) +
                                             " does not divide the domain lengths");
  }
  return uniform(width, height, nx, ny);
}

void Grid::validate() const {
  if (nx < 1 || ny < 1) throw Error(ErrorKind::InvalidInput, "grid needs at least one cell");
  if (!(dx > 0.0) || !(dy > 0.0)) throw Error(ErrorKind::InvalidInput, "cell sizes must be positive");
  if (ghost < 2) throw Error(ErrorKind::InvalidInput, "MUSCL stencil needs two ghost layers");
}

GridState::GridState(const Grid& grid, std::size_t n)
    : grid_(grid), n_(n), data_(grid.cell_count() * n, 0.0) {
  grid_.validate();
  if (n == 0) throw Error(ErrorKind::InvalidInput, "state needs at least one component");
}

GridState GridState::from_function(const Grid& grid, std::size_t n, const InitFn& f,
                                   int points) {
  static const std::array<std::vector<double>, 3> nodes = {
      std::vector<double>{0.0},
      std::vector<double>{-1.0 / std::sqrt(3.0), 1.0 / std::sqrt(3.0)},
      std::vector<double>{-std::sqrt(0.6), 0.0, std::sqrt(0.6)}};
  static const std::array<std::vector<double>, 3> weights = {
      std::vector<double>{2.0}, std::vector<double>{1.0, 1.0},
      std::vector<double>{5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0}};
  if (points < 1 || points > 3) throw Error(ErrorKind::InvalidInput, "quadrature points in 1..3");

  GridState s(grid, n);
  const auto& xi = nodes[points - 1];
  const auto& wi = weights[points - 1];
  std::vector<double> buf(n);
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      auto c = s.cell(i, j);
      for (std::size_t a = 0; a < xi.size(); ++a) {
        for (std::size_t b = 0; b < xi.size(); ++b) {
          const double x = grid.xc(i) + 0.5 * grid.dx * xi[a];
          const double y = grid.yc(j) + 0.5 * grid.dy * xi[b];
          std::fill(buf.begin(), buf.end(), 0.0);
          f(x, y, buf);
          const double w = 0.25 * wi[a] * wi[b];
          for (std::size_t k = 0; k < n; ++k) c[k] += w * buf[k];
        }
      }
    }
  }
  return s;
}

bool GridState::interior_finite() const {
  for (int j = 0; j < grid_.ny; ++j)
    for (int i = 0; i < grid_.nx; ++i)
      for (double v : cell(i, j))
        if (!std::isfinite(v)) return false;
  return true;
}

double GridState::max_norm() const {
  double m = 0.0;
  for (int j = 0; j < grid_.ny; ++j)
    for (int i = 0; i < grid_.nx; ++i) {
      double s = 0.0;
      for (double v : cell(i, j)) s += v * v;
      m = std::max(m, s);
    }
  return std::sqrt(m);
}

double GridState::l2_norm_squared() const {
  double s = 0.0;
  for (int j = 0; j < grid_.ny; ++j)
    for (int i = 0; i < grid_.nx; ++i)
      for (double v : cell(i, j)) s += v * v;
  return s * grid_.dx * grid_.dy;
}

void GridState::axpby(double a, double b, const GridState& other) {
  if (other.n_ != n_ || other.data_.size() != data_.size()) {
    throw Error(ErrorKind::InvalidInput, "state shape mismatch");
  }
  for (int j = 0; j < grid_.ny; ++j) {
    const std::size_t row = offset(0, j);
    const std::size_t len = static_cast<std::size_t>(grid_.nx) * n_;
    for (std::size_t q = row; q < row + len; ++q) data_[q] = a * data_[q] + b * other.data_[q];
  }
}

}  // namespace hyperstab
