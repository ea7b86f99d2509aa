#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hyperstab/boundary.hpp"
#include "hyperstab/grid.hpp"
#include "hyperstab/lmi.hpp"
#include "hyperstab/monitor.hpp"
#include "hyperstab/solver.hpp"
#include "hyperstab/systems.hpp"
#include "hyperstab/weights.hpp"

namespace hyperstab {

/// Either a cell size (dx > 0, same in both directions) or cell counts.
struct GridSpec {
  double dx = 0.0;
  int nx = 0;
  int ny = 0;

  Grid make(double width, double height) const;
  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

enum class InitKind { Constant, Sinusoid };

/// Constant vector, or values[k] sin(2 pi fx x) sin(2 pi fy y) per component.
struct InitialData {
  InitKind kind = InitKind::Constant;
  std::vector<double> values;
  std::array<double, 2> frequency{1.0, 1.0};

  GridState::InitFn function() const;
  friend bool operator==(const InitialData&, const InitialData&) = default;
};

struct NamedWeight {
  std::string name;
  WeightFunction weight;
};

struct ExperimentSetup {
  SystemSpec system;
  GridState initial;
  BoundaryPolicy policy;
  std::vector<NamedWeight> weights;
  double cfl = 0.5;
  double t_end = 3.0;
  double rate = 1.0;        ///< comparison decay rate
  double slack = 1.05;      ///< bound check: L_n <= slack L_0 exp(-rate t_n)
  double check_from = 0.1;  ///< bound checked for t_n >= check_from
  double fit_from = 0.1;    ///< fit window starts at fit_from * t_end
};

struct ExperimentResult {
  std::vector<double> times;
  std::vector<std::string> names;
  std::vector<std::vector<double>> lyapunov;  ///< [weight][sample]
  /// Boundary integral of w^T A*(n) w times the weight, on face states;
  /// empty for weights that are not scalar.
  std::vector<std::vector<double>> boundary;
  std::vector<double> state_norm_sq;  ///< dx dy sum |w|^2
  std::vector<double> control_u;
  std::vector<double> fitted_rates;   ///< NaN when the window is too short
  std::vector<double> worst_ratio;    ///< max L_n / (L_0 exp(-rate t_n)) in the check window
  std::vector<bool> bound_ok;
  double rate = 0.0;
  double slack = 0.0;
  double check_from = 0.0;
  std::size_t steps = 0;
  GridState final_state;

  DecaySeries series(std::size_t weight) const;
};

ExperimentResult run_experiment(const ExperimentSetup& setup);

enum class SvWeightSet { Exponential, Linear, Both, Dia };

struct SvExperiment {
  SaintVenantParams params;
  std::optional<SvControlGains> gains;  ///< defaults(params) when unset
  GridSpec grid{0.01, 0, 0};
  double cfl = 0.5;
  double t_end = 3.0;
  InitialData init{InitKind::Constant, {1.0, 1.0, 1.0}, {1.0, 1.0}};
  double rate = 1.4;
  SvWeightSet weights = SvWeightSet::Both;
};

/// Channel [0, L] x [0, 1] under the feedback laws on all four sides.
ExperimentSetup sv_setup(const SvExperiment& e);

struct DiagExperiment {
  double c_l = 4.0;
  GridSpec grid{0.0, 100, 100};
  double cfl = 0.5;
  double t_end = 3.0;
  InitialData init{InitKind::Sinusoid, {1.0, 1.0, 1.0}, {1.0, 1.0}};
  std::optional<double> rate;  ///< c_l when unset
};

/// Unit square with the feedback value u(t) and the exponential weights.
ExperimentSetup diag_setup(const DiagExperiment& e);

enum class CustomBoundary { Transmissive, Zero };

struct CustomExperiment {
  SystemSpec system;
  double width = 1.0;
  double height = 1.0;
  GridSpec grid{0.0, 50, 50};
  double cfl = 0.5;
  double t_end = 1.0;
  InitialData init;
  std::array<CustomBoundary, 4> boundary{};  ///< indexed by Side
  PotentialSpec potential;  ///< weight exp(m . x + c0), rate decay_c
};

ExperimentSetup custom_setup(const CustomExperiment& e);

struct ConvergenceRow {
  int nx = 0;
  double dx = 0.0;
  double l1_error = 0.0;
  double order = 0.0;  ///< against the previous row; NaN for the first
};

/// Scalar advection u_t + u_x = 0 on [0, 1] with u(x, 0) = sin(2 pi x) and
/// the exact inflow prescribed on the left. Reports the L1 error of the
/// cell averages at t_end against the exact averages for each nx.
std::vector<ConvergenceRow> advection_convergence(const std::vector<int>& nxs, double cfl = 0.5,
                                                  double t_end = 0.5);

}  // namespace hyperstab
