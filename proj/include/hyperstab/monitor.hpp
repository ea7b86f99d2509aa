#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "hyperstab/grid.hpp"
#include "hyperstab/weights.hpp"

namespace hyperstab {

/// Where the weight is sampled for cell (i, j).
enum class QuadratureRule {
  CellCenter,   ///< (x0 + (i + 1/2) dx, y0 + (j + 1/2) dy), midpoint rule
  NodeIndexed,  ///< (x0 + i dx, y0 + j dy), the node-indexed variant
};

/// dx dy sum_cells sum_k weight_k(x_i, y_j) w_k^2. FixedMatrix weights give
/// the quadratic form w^T diag(d) w.
double lyapunov_quadrature(const GridState& state, const WeightFunction& weight,
                           QuadratureRule rule = QuadratureRule::CellCenter);

/// Weight values cached per cell and component, for repeated quadrature on
/// a fixed grid.
class WeightTable {
 public:
  WeightTable(const WeightFunction& weight, const Grid& grid, std::size_t n,
              QuadratureRule rule = QuadratureRule::CellCenter);

  double quadrature(const GridState& state) const;
  double at(int i, int j, std::size_t k) const {
    return values_[(static_cast<std::size_t>(j) * grid_.nx + static_cast<std::size_t>(i)) * n_ + k];
  }

 private:
  Grid grid_;
  std::size_t n_;
  std::vector<double> values_;
};

/// Exponential partner of the linear weight K + alpha . x: exp(alpha . x / K + ln K).
/// Throws InvalidInput unless K > 0.
WeightFunction exp_partner(double k, std::array<double, 2> alpha);

/// f >= g at every cell center (scalar weights, relative slack 1e-12).
bool compare_weights(const WeightFunction& f, const WeightFunction& g, const Grid& grid);
/// The pointwise check plus L_f(state) >= L_g(state).
bool compare_weights(const WeightFunction& f, const WeightFunction& g, const GridState& state);

struct DecaySeries {
  std::vector<double> times;
  std::vector<double> values;

  /// Samples with t >= t_min.
  DecaySeries window(double t_min) const;
  /// Throws InvalidInput unless sizes match, times strictly increase and
  /// values are positive.
  void validate() const;
};

/// Least-squares slope of -log L against t. Needs at least three samples.
double fit_decay(const DecaySeries& series);

/// L_n <= slack * L_0 * exp(-rate (t_n - t_0)) for every n with t_n >= t_min.
/// L_0 is always the first sample.
bool check_decay_bound(const DecaySeries& series, double rate, double slack, double t_min = 0.0);

/// Largest ratio L_n / (L_0 exp(-rate (t_n - t_0))) over t_n >= t_min.
double worst_bound_ratio(const DecaySeries& series, double rate, double t_min = 0.0);

}  // namespace hyperstab
