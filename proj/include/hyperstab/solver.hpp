#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <variant>
#include <vector>

#include "hyperstab/boundary.hpp"
#include "hyperstab/grid.hpp"
#include "hyperstab/systems.hpp"

namespace hyperstab {

// Boundary policies. Every policy produces a face state on each boundary
// face from the adjacent interior cell; both ghost layers are then set to
// that face state, so the upwind flux sees the prescribed incoming
// characteristics.

/// Face state = adjacent interior cell.
struct Transmissive {};
/// Face state = 0.
struct ZeroState {};
/// Saint-Venant solid wall (normal velocity zero).
struct WallNormalZero {
  SaintVenantParams params;
};
/// Saint-Venant feedback laws for the side it is attached to.
struct SvControl {
  SaintVenantParams params;
  SvControlGains gains;
};
/// Diagonal example: per component, the feedback value u(t) on C_i, zero on
/// Z_i, transmissive on Gamma_i^+.
struct DiagControl {
  DiagSystemSpec spec;
};
/// Face state from a known function of (t, x, y), e.g. an exact solution.
struct Prescribed {
  std::function<void(double t, double x, double y, std::span<double> out)> value;
};

using SidePolicy =
    std::variant<Transmissive, ZeroState, WallNormalZero, SvControl, DiagControl, Prescribed>;

struct BoundaryPolicy {
  std::array<SidePolicy, 4> sides{};  ///< indexed by Side

  static BoundaryPolicy uniform(const SidePolicy& p);
  /// Feedback laws on all four sides of the Saint-Venant channel.
  static BoundaryPolicy saint_venant(const SaintVenantParams& p, const SvControlGains& g);
  static BoundaryPolicy diagonal(const DiagSystemSpec& spec);

  const SidePolicy& operator[](Side s) const { return sides[static_cast<int>(s)]; }
  SidePolicy& operator[](Side s) { return sides[static_cast<int>(s)]; }
};

/// Face states written by the last ghost fill plus the feedback value u(t)
/// (zero unless a DiagControl side is present).
struct GhostFill {
  BoundaryTraces faces;
  double control_u = 0.0;
};

/// Populates both ghost layers on every side. Throws InvalidInput when a
/// policy does not fit the system (e.g. Saint-Venant laws on n != 3).
GhostFill fill_ghosts(GridState& state, const BoundaryPolicy& policy, const SystemSpec& sys);

/// max_k spectral radius of A_k.
double max_wave_speed(const SystemSpec& sys);

struct StepReport {
  double dt = 0.0;
  double max_wave_speed = 0.0;
  double state_norm = 0.0;  ///< sqrt(dx dy sum |w|^2) after the step
};

/// Second-order finite-volume scheme for w_t + A1 w_x + A2 w_y = -B w:
/// componentwise minmod-limited linear reconstruction, exact upwind flux
/// A+ w_L + A- w_R from the eigendecomposition of A_k, and two-stage SSP
/// Runge-Kutta in time with the source evaluated inside each stage.
class MusclSolver {
 public:
  MusclSolver(SystemSpec sys, const Grid& grid);

  const SystemSpec& system() const noexcept { return sys_; }
  double max_wave_speed() const noexcept { return max_speed_; }
  double stable_dt(double cfl) const;

  /// Advances `state` by `dt` (ghosts are refilled before each stage).
  /// Throws BlowUpError when a non-finite value appears.
  StepReport step(GridState& state, const BoundaryPolicy& policy, double dt,
                  std::size_t step_index = 0);

  /// Semi-discrete right-hand side on the interior; ghosts must be filled.
  void rhs(const GridState& state, GridState& out);

 private:
  SystemSpec sys_;
  Grid grid_;
  double max_speed_ = 0.0;
  std::array<std::vector<double>, 2> a_plus_;
  std::array<std::vector<double>, 2> a_minus_;
  std::vector<double> b_;
  GridState stage_;
  GridState work_;
  std::vector<double> face_l_;
  std::vector<double> face_r_;
};

/// One step of size cfl * min(dx, dy) / max_wave_speed.
StepReport muscl_step(GridState& state, const SystemSpec& sys, const BoundaryPolicy& policy,
                      double cfl);

struct Snapshot {
  const GridState& state;
  const GhostFill& boundary;
  std::size_t step;
};

using Observer = std::function<void(const Snapshot&)>;

struct RunResult {
  GridState final_state;
  std::vector<double> times;
  std::vector<StepReport> reports;
  std::size_t steps = 0;
};

/// Steps until t_end (the last step is clipped to land on it). Observers
/// see the initial state and the state after every step, with ghost layers
/// refreshed. Throws BlowUpError with the failing step index.
RunResult run(const SystemSpec& sys, GridState init, const BoundaryPolicy& policy, double cfl,
              double t_end, const std::vector<Observer>& observers = {});

}  // namespace hyperstab
