#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "hyperstab/weights.hpp"

namespace hyperstab {

/// Uniform cell-centered grid with `ghost` layers on every side. Cell (i, j)
/// for 0 <= i < nx, 0 <= j < ny covers
/// [x0 + i dx, x0 + (i+1) dx] x [y0 + j dy, y0 + (j+1) dy].
struct Grid {
  int nx = 0;
  int ny = 0;
  double dx = 0.0;
  double dy = 0.0;
  double x0 = 0.0;
  double y0 = 0.0;
  int ghost = 2;

  /// Throws InvalidInput unless `width / nx` and `height / ny` are positive.
  static Grid uniform(double width, double height, int nx, int ny);
  /// Cell size `h` in both directions; the lengths must be multiples of h.
  static Grid with_spacing(double width, double height, double h);

  double width() const { return nx * dx; }
  double height() const { return ny * dy; }
  Rect domain() const { return {x0, y0, width(), height()}; }
  double xc(int i) const { return x0 + (i + 0.5) * dx; }
  double yc(int j) const { return y0 + (j + 0.5) * dy; }
  int stride() const { return nx + 2 * ghost; }
  std::size_t cell_count() const {
    return static_cast<std::size_t>(nx + 2 * ghost) * static_cast<std::size_t>(ny + 2 * ghost);
  }

  void validate() const;
};

/// Cell-averaged n-component field including ghost layers.
class GridState {
 public:
  using InitFn = std::function<void(double x, double y, std::span<double> out)>;

  GridState() = default;
  GridState(const Grid& grid, std::size_t n);

  /// Cell averages of `f` by tensor Gauss-Legendre quadrature with `points`
  /// nodes per direction (1..3).
  static GridState from_function(const Grid& grid, std::size_t n, const InitFn& f,
                                 int points = 3);

  const Grid& grid() const noexcept { return grid_; }
  std::size_t n() const noexcept { return n_; }
  double time() const noexcept { return time_; }
  void set_time(double t) noexcept { time_ = t; }

  std::size_t offset(int i, int j) const {
    return (static_cast<std::size_t>(j + grid_.ghost) * grid_.stride() +
            static_cast<std::size_t>(i + grid_.ghost)) *
           n_;
  }
  std::span<double> cell(int i, int j) { return {data_.data() + offset(i, j), n_}; }
  std::span<const double> cell(int i, int j) const {
    return {data_.data() + offset(i, j), n_};
  }
  double& at(int i, int j, std::size_t k) { return data_[offset(i, j) + k]; }
  double at(int i, int j, std::size_t k) const { return data_[offset(i, j) + k]; }

  std::span<double> raw() noexcept { return data_; }
  std::span<const double> raw() const noexcept { return data_; }

  bool interior_finite() const;
  /// max over interior cells of |w|_2
  double max_norm() const;
  /// dx dy sum over interior cells of |w|^2
  double l2_norm_squared() const;

  /// a * this + b * other on the interior.
  void axpby(double a, double b, const GridState& other);

 private:
  Grid grid_;
  std::size_t n_ = 0;
  double time_ = 0.0;
  std::vector<double> data_;
};

}  // namespace hyperstab
