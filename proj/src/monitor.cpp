#include "hyperstab/monitor.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hyperstab/error.hpp"

namespace hyperstab {

namespace {

std::array<double, 2> sample_point(const Grid& g, int i, int j, QuadratureRule rule) {
  if (rule == QuadratureRule::NodeIndexed) return {g.x0 + i * g.dx, g.y0 + j * g.dy};
  return {g.xc(i), g.yc(j)};
}

}  // namespace

WeightTable::WeightTable(const WeightFunction& weight, const Grid& grid, std::size_t n,
                         QuadratureRule rule)
    : grid_(grid), n_(n), values_(static_cast<std::size_t>(grid.nx) * grid.ny * n) {
  if (weight.kind() == WeightKind::FixedMatrix && weight.diagonal().size() != n) {
    throw Error(ErrorKind::InvalidInput, "fixed weight has " +
                                             std::to_string(weight.diagonal().size()) +
                                             " entries for n = " + std::to_string(n));
  }
  if (weight.kind() == WeightKind::ExpPerComponent && weight.exponents().size() != n) {
    throw Error(ErrorKind::InvalidInput, "per-component weight size does not match n");
  }
  std::size_t q = 0;
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i) {
      const auto p = sample_point(grid, i, j, rule);
      for (std::size_t k = 0; k < n; ++k) values_[q++] = weight(k, p[0], p[1]);
    }
}

double WeightTable::quadrature(const GridState& state) const {
  if (state.n() != n_ || state.grid().nx != grid_.nx || state.grid().ny != grid_.ny) {
    throw Error(ErrorKind::InvalidInput, "weight table does not match the state");
  }
  double s = 0.0;
  std::size_t q = 0;
  for (int j = 0; j < grid_.ny; ++j)
    for (int i = 0; i < grid_.nx; ++i)
      for (double v : state.cell(i, j)) s += values_[q++] * v * v;
  return s * grid_.dx * grid_.dy;
}

double lyapunov_quadrature(const GridState& state, const WeightFunction& weight,
                           QuadratureRule rule) {
  return WeightTable(weight, state.grid(), state.n(), rule).quadrature(state);
}

WeightFunction exp_partner(double k, std::array<double, 2> alpha) {
  if (!(k > 0.0)) throw Error(ErrorKind::InvalidInput, "K must be positive");
  return WeightFunction::exp_scalar({alpha[0] / k, alpha[1] / k}, std::log(k));
}

bool compare_weights(const WeightFunction& f, const WeightFunction& g, const Grid& grid) {
  if (!f.scalar() || !g.scalar()) {
    throw Error(ErrorKind::InvalidInput, "weight comparison needs scalar weights");
  }
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i) {
      const double fv = f(grid.xc(i), grid.yc(j));
      const double gv = g(grid.xc(i), grid.yc(j));
      if (fv < gv - 1e-12 * std::abs(gv)) return false;
    }
  return true;
}

bool compare_weights(const WeightFunction& f, const WeightFunction& g, const GridState& state) {
  if (!compare_weights(f, g, state.grid())) return false;
  const double lf = lyapunov_quadrature(state, f);
  const double lg = lyapunov_quadrature(state, g);
  return lf >= lg - 1e-12 * std::abs(lg);
}

DecaySeries DecaySeries::window(double t_min) const {
  DecaySeries out;
  for (std::size_t q = 0; q < times.size() && q < values.size(); ++q) {
    if (times[q] >= t_min) {
      out.times.push_back(times[q]);
      out.values.push_back(values[q]);
    }
  }
  return out;
}

void DecaySeries::validate() const {
  if (times.size() != values.size()) {
    throw Error(ErrorKind::InvalidInput, "decay series has mismatched lengths");
  }
  for (std::size_t q = 0; q < values.size(); ++q) {
    if (!(values[q] > 0.0)) {
      throw Error(ErrorKind::InvalidInput,
                  "decay series value " + std::to_string(q) + " is not positive");
    }
    if (q > 0 && !(times[q] > times[q - 1])) {
      throw Error(ErrorKind::InvalidInput, "decay series times must strictly increase");
    }
  }
}

double fit_decay(const DecaySeries& series) {
  series.validate();
  const std::size_t m = series.times.size();
  if (m < 3) throw Error(ErrorKind::InvalidInput, "decay fit needs at least three samples");
  double st = 0.0;
  double sy = 0.0;
  for (std::size_t q = 0; q < m; ++q) {
    st += series.times[q];
    sy += -std::log(series.values[q]);
  }
  const double tm = st / m;
  const double ym = sy / m;
  double num = 0.0;
  double den = 0.0;
  for (std::size_t q = 0; q < m; ++q) {
    const double dt = series.times[q] - tm;
    num += dt * (-std::log(series.values[q]) - ym);
    den += dt * dt;
  }
  return num / den;
}

double worst_bound_ratio(const DecaySeries& series, double rate, double t_min) {
  series.validate();
  if (series.values.empty()) throw Error(ErrorKind::InvalidInput, "empty decay series");
  const double l0 = series.values.front();
  const double t0 = series.times.front();
  double worst = 0.0;
  for (std::size_t q = 0; q < series.values.size(); ++q) {
    if (series.times[q] < t_min) continue;
    const double bound = l0 * std::exp(-rate * (series.times[q] - t0));
    worst = std::max(worst, series.values[q] / bound);
  }
  return worst;
}

bool check_decay_bound(const DecaySeries& series, double rate, double slack, double t_min) {
  return worst_bound_ratio(series, rate, t_min) <= slack;
}

}  // namespace hyperstab
