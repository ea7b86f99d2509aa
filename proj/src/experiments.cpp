#include "hyperstab/experiments.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "hyperstab/error.hpp"

namespace hyperstab {

Grid GridSpec::make(double width, double height) const {
  if (dx > 0.0) return Grid::with_spacing(width, height, dx);
  return Grid::uniform(width, height, nx, ny);
}

GridState::InitFn InitialData::function() const {
  const auto vals = values;
  if (kind == InitKind::Constant) {
    return [vals](double, double, std::span<double> out) {
      for (std::size_t k = 0; k < out.size(); ++k) out[k] = vals[k];
    };
  }
  const double fx = 2.0 * std::numbers::pi * frequency[0];
  const double fy = 2.0 * std::numbers::pi * frequency[1];
  return [vals, fx, fy](double x, double y, std::span<double> out) {
    const double s = std::sin(fx * x) * std::sin(fy * y);
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = vals[k] * s;
  };
}

namespace {

GridState initial_state(const Grid& grid, std::size_t n, const InitialData& init) {
  if (init.values.size() != n) {
    throw Error(ErrorKind::InvalidInput, "initial data has " + std::to_string(init.values.size()) +
                                             " components, system has " + std::to_string(n));
  }
  return GridState::from_function(grid, n, init.function());
}

}  // namespace

DecaySeries ExperimentResult::series(std::size_t weight) const {
  return {times, lyapunov.at(weight)};
}

ExperimentResult run_experiment(const ExperimentSetup& setup) {
  const Grid& grid = setup.initial.grid();
  const std::size_t n = setup.system.n;

  std::vector<WeightTable> tables;
  ExperimentResult res;
  for (const auto& w : setup.weights) {
    tables.emplace_back(w.weight, grid, n);
    res.names.push_back(w.name);
  }
  res.lyapunov.resize(setup.weights.size());
  res.boundary.resize(setup.weights.size());

  auto record = [&](const Snapshot& snap) {
    res.times.push_back(snap.state.time());
    for (std::size_t q = 0; q < tables.size(); ++q) {
      res.lyapunov[q].push_back(tables[q].quadrature(snap.state));
      const auto& wf = setup.weights[q].weight;
      if (wf.scalar()) {
        res.boundary[q].push_back(boundary_quadrature(
            setup.system, [&wf](double x, double y) { return wf(x, y); }, snap.boundary.faces));
      }
    }
    res.state_norm_sq.push_back(snap.state.l2_norm_squared());
    res.control_u.push_back(snap.boundary.control_u);
  };

  auto run_res = run(setup.system, setup.initial, setup.policy, setup.cfl, setup.t_end, {record});
  res.steps = run_res.steps;
  res.final_state = std::move(run_res.final_state);
  res.rate = setup.rate;
  res.slack = setup.slack;
  res.check_from = setup.check_from;

  for (std::size_t q = 0; q < tables.size(); ++q) {
    const DecaySeries s = res.series(q);
    const DecaySeries win = s.window(setup.fit_from * setup.t_end);
    double fitted = std::numeric_limits<double>::quiet_NaN();
    bool positive = true;
    for (double v : s.values) positive = positive && v > 0.0;
    if (positive && win.times.size() >= 3) fitted = fit_decay(win);
    res.fitted_rates.push_back(fitted);
    const double worst = positive ? worst_bound_ratio(s, setup.rate, setup.check_from)
                                  : std::numeric_limits<double>::quiet_NaN();
    res.worst_ratio.push_back(worst);
    res.bound_ok.push_back(positive && worst <= setup.slack);
  }
  return res;
}

ExperimentSetup sv_setup(const SvExperiment& e) {
  e.params.validate();
  const SvControlGains gains = e.gains.value_or(SvControlGains::defaults(e.params));
  gains.validate(e.params);
  const Grid grid = e.grid.make(e.params.domain_l, 1.0);

  ExperimentSetup s;
  s.system = saint_venant(e.params);
  s.initial = initial_state(grid, 3, e.init);
  s.policy = BoundaryPolicy::saint_venant(e.params, gains);
  switch (e.weights) {
    case SvWeightSet::Exponential:
      s.weights = {{"exp", sv_weights(e.params, WeightStyle::Exponential)}};
      break;
    case SvWeightSet::Linear:
      s.weights = {{"lin", sv_weights(e.params, WeightStyle::Linear)}};
      break;
    case SvWeightSet::Both:
      s.weights = {{"exp", sv_weights(e.params, WeightStyle::Exponential)},
                   {"lin", sv_weights(e.params, WeightStyle::Linear)}};
      break;
    case SvWeightSet::Dia:
      s.weights = {{"dia", dia_weight(e.params)}};
      break;
  }
  s.cfl = e.cfl;
  s.t_end = e.t_end;
  s.rate = e.rate;
  return s;
}

ExperimentSetup diag_setup(const DiagExperiment& e) {
  const DiagSystemSpec spec = diagonal_example(e.c_l);
  const Grid grid = e.grid.make(1.0, 1.0);

  ExperimentSetup s;
  s.system = spec.to_system();
  s.initial = initial_state(grid, 3, e.init);
  s.policy = BoundaryPolicy::diagonal(spec);
  s.weights = {{"exp", diag_weights(e.c_l)}};
  s.cfl = e.cfl;
  s.t_end = e.t_end;
  s.rate = e.rate.value_or(e.c_l);
  return s;
}

ExperimentSetup custom_setup(const CustomExperiment& e) {
  e.system.validate();
  e.potential.validate();
  const Grid grid = e.grid.make(e.width, e.height);

  ExperimentSetup s;
  s.system = e.system;
  s.initial = initial_state(grid, e.system.n, e.init);
  for (Side side : all_sides) {
    if (e.boundary[static_cast<int>(side)] == CustomBoundary::Zero) {
      s.policy[side] = ZeroState{};
    } else {
      s.policy[side] = Transmissive{};
    }
  }
  s.weights = {{"exp", WeightFunction::exp_scalar(e.potential.m, e.potential.c0)}};
  s.cfl = e.cfl;
  s.t_end = e.t_end;
  s.rate = e.potential.decay_c;
  return s;
}

std::vector<ConvergenceRow> advection_convergence(const std::vector<int>& nxs, double cfl,
                                                  double t_end) {
  const double two_pi = 2.0 * std::numbers::pi;
  SystemSpec sys;
  sys.n = 1;
  sys.a1 = SymMatrix{{1.0}};
  sys.a2 = SymMatrix{{0.0}};
  sys.b = Matrix{{0.0}};
  sys.labels = {"u"};

  BoundaryPolicy policy = BoundaryPolicy::uniform(Transmissive{});
  policy[Side::Left] = Prescribed{[two_pi](double t, double x, double, std::span<double> out) {
    out[0] = std::sin(two_pi * (x - t));
  }};

  std::vector<ConvergenceRow> rows;
  for (int nx : nxs) {
    const Grid grid = Grid::uniform(1.0, 1.0, nx, 1);
    GridState init(grid, 1);
    // Exact cell average of sin(2 pi (x - t)) over [a, b].
    auto average = [&](int i, double t) {
      const double a = grid.x0 + i * grid.dx;
      const double b = a + grid.dx;
      return (std::cos(two_pi * (a - t)) - std::cos(two_pi * (b - t))) / (two_pi * grid.dx);
    };
    for (int i = 0; i < nx; ++i) init.at(i, 0, 0) = average(i, 0.0);

    const auto res = run(sys, init, policy, cfl, t_end);
    double err = 0.0;
    for (int i = 0; i < nx; ++i) {
      err += std::abs(res.final_state.at(i, 0, 0) - average(i, res.final_state.time()));
    }
    err *= grid.dx;

    ConvergenceRow row{nx, grid.dx, err, std::numeric_limits<double>::quiet_NaN()};
    if (!rows.empty()) {
      row.order = std::log(rows.back().l1_error / err) / std::log(rows.back().dx / grid.dx);
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace hyperstab
