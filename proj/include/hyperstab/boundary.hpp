#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "hyperstab/smallmat.hpp"
#include "hyperstab/systems.hpp"

namespace hyperstab {

enum class Side { Left = 0, Right = 1, Bottom = 2, Top = 3 };

inline constexpr std::array<Side, 4> all_sides = {Side::Left, Side::Right, Side::Bottom,
                                                  Side::Top};

const char* to_string(Side s);
std::array<double, 2> outward_normal(Side s);

/// A point on the boundary of [0, width] x [0, height]. `arc` runs from 0 to
/// 1 along the side in the positive coordinate direction.
struct BoundaryPoint {
  Side side = Side::Left;
  double arc = 0.0;
  std::array<double, 2> xy{};
  std::array<double, 2> normal{};
};

BoundaryPoint boundary_point(Side side, double arc, double width, double height);

/// nu_1 A1 + nu_2 A2. Throws InvalidInput unless |nu| = 1 within 1e-12.
SymMatrix pencil(const SystemSpec& sys, std::array<double, 2> nu);

// ---------------------------------------------------------------- Saint-Venant

using SvState = std::array<double, 3>;  ///< (h, w, v)

/// Closed-form eigenstructure of the Saint-Venant pencil (v* = 0).
struct SvEigenstructure {
  std::array<double, 2> nu{};
  std::array<double, 3> lambdas{};  ///< nu_1 w* - c, nu_1 w*, nu_1 w* + c
  Matrix t_matrix;                  ///< orthogonal, columns are eigenvectors

  SvState to_characteristic(const SvState& w) const;    ///< T^T w
  SvState from_characteristic(const SvState& v) const;  ///< T v
};

SvEigenstructure sv_eigenstructure(const SaintVenantParams& p, std::array<double, 2> nu);

/// Feedback gains of the five Saint-Venant boundary controls.
struct SvControlGains {
  double alpha = 0.0;    ///< left: v1 = sqrt(alpha) v3
  double beta = 1.0;     ///< right: v1 = sqrt(beta) v3
  double gamma = 0.0;    ///< left tangential velocity fed by spillway height
  double epsilon = 0.5;  ///< spillway: v1 = sqrt(epsilon) v3

  static double alpha_max(const SaintVenantParams& p);
  static double beta_max(const SaintVenantParams& p);
  static double gamma_max(const SaintVenantParams& p, double epsilon);

  /// alpha and gamma at half their bounds, beta = 1, epsilon = 1/2.
  static SvControlGains defaults(const SaintVenantParams& p);

  /// Throws InvalidParams naming the violated bound.
  void validate(const SaintVenantParams& p) const;

  friend bool operator==(const SvControlGains&, const SvControlGains&) = default;
};

/// Spillway segment of the bottom side, as arc positions.
inline constexpr double spillway_begin = 1.0 / 3.0;
inline constexpr double spillway_end = 2.0 / 3.0;
bool on_spillway(double arc);

/// Face state on the given side under the feedback laws. Incoming
/// characteristics are set by the control, outgoing ones are taken from
/// `trace`. `coupled_h` is the (controlled) bottom face height at
/// x = (L/3)(y + 1); it is only read on the left side.
SvState sv_boundary_values(const SvControlGains& gains, const SaintVenantParams& p, Side side,
                           double arc, const SvState& trace, double coupled_h);

/// Face state of a solid wall: normal velocity zero, outgoing
/// characteristics from `trace`.
SvState sv_wall_values(const SaintVenantParams& p, Side side, const SvState& trace);

// ---------------------------------------------------------------- partitions

struct ComponentSplit {
  std::vector<Side> outgoing;  ///< Gamma_i^+
  std::vector<Side> incoming;  ///< Gamma_i^-
  std::vector<Side> control;   ///< C_i (diagonal example)
  std::vector<Side> zero;      ///< Z_i (diagonal example)
};

struct GammaPartition {
  std::vector<ComponentSplit> components;

  bool outgoing(std::size_t i, Side s) const;
  bool incoming(std::size_t i, Side s) const;
};

/// Throws InvalidParams for supercritical w*.
GammaPartition sv_partition(const SaintVenantParams& p);
GammaPartition diag_partition();

// ---------------------------------------------------------------- diagonal control

/// 2(e - 1) + e (e^{C_L+1} - 1) / (C_L + 1)
double diag_control_constant(double c_l);

/// Outgoing traces of the diagonal system: values[i][side] holds w_i at the
/// face midpoints of that side (uniformly spaced on [0, 1]); only sides in
/// Gamma_i^+ are read.
struct DiagOutflowTraces {
  std::array<std::array<std::vector<double>, 4>, 3> values;
};

/// Weighted outflow integral I(t) by the midpoint rule.
double diag_outflow_integral(const DiagSystemSpec& spec, const DiagOutflowTraces& traces);

/// u = sqrt(I(t) / C(C_L)). Throws NumericalError if I(t) is negative
/// beyond rounding.
double diag_control_value(const DiagSystemSpec& spec, const DiagOutflowTraces& traces);

// ---------------------------------------------------------------- boundary integral

/// Face states around [0, width] x [0, height]; faces[side] holds
/// count * n values, face midpoints uniformly spaced along the side.
struct BoundaryTraces {
  std::size_t n = 0;
  double width = 1.0;
  double height = 1.0;
  std::array<std::vector<double>, 4> faces;

  std::size_t count(Side s) const { return faces[static_cast<int>(s)].size() / n; }
  std::span<const double> face(Side s, std::size_t idx) const {
    return {faces[static_cast<int>(s)].data() + idx * n, n};
  }
  double max_norm() const;
  double perimeter() const { return 2.0 * (width + height); }
};

/// Integral over the boundary of w^T A*(n) w * weight by the midpoint rule.
double boundary_quadrature(const SystemSpec& sys,
                           const std::function<double(double, double)>& weight,
                           const BoundaryTraces& traces);

/// 1e-8 * perimeter * (max face norm)^2
double quadrature_epsilon(const BoundaryTraces& traces);

}  // namespace hyperstab
