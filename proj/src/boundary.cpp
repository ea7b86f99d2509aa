#include "hyperstab/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "hyperstab/error.hpp"
#include "hyperstab/weights.hpp"

namespace hyperstab {

namespace {

void require_unit(std::array<double, 2> nu) {
  const double len = std::hypot(nu[0], nu[1]);
  if (!(std::abs(len - 1.0) <= 1e-12)) {
    throw Error(ErrorKind::InvalidInput, "direction is not a unit vector (|nu| = " +
                                             std::to_string(len) + ")");
  }
}

bool contains(const std::vector<Side>& sides, Side s) {
  return std::find(sides.begin(), sides.end(), s) != sides.end();
}

}  // namespace

const char* to_string(Side s) {
  switch (s) {
    case Side::Left: return "left";
    case Side::Right: return "right";
    case Side::Bottom: return "bottom";
    case Side::Top: return "top";
  }
  return "?";
}

std::array<double, 2> outward_normal(Side s) {
  switch (s) {
    case Side::Left: return {-1.0, 0.0};
    case Side::Right: return {1.0, 0.0};
    case Side::Bottom: return {0.0, -1.0};
    case Side::Top: return {0.0, 1.0};
  }
  return {0.0, 0.0};
}

BoundaryPoint boundary_point(Side side, double arc, double width, double height) {
  if (!(arc >= 0.0 && arc <= 1.0)) {
    throw Error(ErrorKind::InvalidInput, "arc position " + std::to_string(arc) + " outside [0,1]");
  }
  BoundaryPoint p{side, arc, {}, outward_normal(side)};
  switch (side) {
    case Side::Left: p.xy = {0.0, arc * height}; break;
    case Side::Right: p.xy = {width, arc * height}; break;
    case Side::Bottom: p.xy = {arc * width, 0.0}; break;
    case Side::Top: p.xy = {arc * width, height}; break;
  }
  return p;
}

SymMatrix pencil(const SystemSpec& sys, std::array<double, 2> nu) {
  require_unit(nu);
  return sys.a1 * nu[0] + sys.a2 * nu[1];
}

// ---------------------------------------------------------------- Saint-Venant

SvState SvEigenstructure::to_characteristic(const SvState& w) const {
  SvState v{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t k = 0; k < 3; ++k) v[i] += t_matrix(k, i) * w[k];
  return v;
}

SvState SvEigenstructure::from_characteristic(const SvState& v) const {
  SvState w{};
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t i = 0; i < 3; ++i) w[k] += t_matrix(k, i) * v[i];
  return w;
}

SvEigenstructure sv_eigenstructure(const SaintVenantParams& p, std::array<double, 2> nu) {
  require_unit(nu);
  const double c = p.celerity();
  const double base = nu[0] * p.w_star;
  const double r = 1.0 / std::numbers::sqrt2;
  SvEigenstructure es;
  es.nu = nu;
  es.lambdas = {base - c, base, base + c};
  es.t_matrix = Matrix{{r, 0.0, r}, {-r * nu[0], -nu[1], r * nu[0]}, {-r * nu[1], nu[0], r * nu[1]}};
  return es;
}

double SvControlGains::alpha_max(const SaintVenantParams& p) {
  const double c = p.celerity();
  return (c - p.w_star) / (c + p.w_star);
}

double SvControlGains::beta_max(const SaintVenantParams& p) {
  const double c = p.celerity();
  return (c + p.w_star) / (c - p.w_star);
}

double SvControlGains::gamma_max(const SaintVenantParams& p, double epsilon) {
  return (1.0 - epsilon) * (2.0 * p.domain_l / 9.0) * p.celerity() / p.w_star;
}

SvControlGains SvControlGains::defaults(const SaintVenantParams& p) {
  SvControlGains g;
  g.epsilon = 0.5;
  g.alpha = 0.5 * alpha_max(p);
  g.beta = 1.0;
  g.gamma = 0.5 * gamma_max(p, g.epsilon);
  return g;
}

void SvControlGains::validate(const SaintVenantParams& p) const {
  auto fail = [](const std::string& what) { throw Error(ErrorKind::InvalidParams, what); };
  if (!(alpha >= 0.0 && alpha <= alpha_max(p))) {
    fail("alpha must lie in [0, (sqrt(gH*) - w*)/(sqrt(gH*) + w*)] = [0, " +
         std::to_string(alpha_max(p)) + "]");
  }
  if (!(beta >= 0.0 && beta <= beta_max(p))) {
    fail("beta must lie in [0, (sqrt(gH*) + w*)/(sqrt(gH*) - w*)] = [0, " +
         std::to_string(beta_max(p)) + "]");
  }
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) fail("epsilon must lie in [0, 1]");
  if (!(gamma >= 0.0 && gamma <= gamma_max(p, epsilon))) {
    fail("gamma must lie in [0, (1 - epsilon)(2L/9) sqrt(gH*)/w*] = [0, " +
         std::to_string(gamma_max(p, epsilon)) + "]");
  }
}

bool on_spillway(double arc) { return arc >= spillway_begin && arc <= spillway_end; }

SvState sv_wall_values(const SaintVenantParams& p, Side side, const SvState& trace) {
  const auto es = sv_eigenstructure(p, outward_normal(side));
  SvState v = es.to_characteristic(trace);
  v[0] = v[2];
  return es.from_characteristic(v);
}

SvState sv_boundary_values(const SvControlGains& gains, const SaintVenantParams& p, Side side,
                           double arc, const SvState& trace, double coupled_h) {
  if (!(arc >= 0.0 && arc <= 1.0)) {
    throw Error(ErrorKind::InvalidInput, "arc position " + std::to_string(arc) + " outside [0,1]");
  }
  const auto es = sv_eigenstructure(p, outward_normal(side));
  SvState v = es.to_characteristic(trace);
  switch (side) {
    case Side::Left: {
      // v3 outgoing; v1, v2 incoming.
      v[0] = std::sqrt(gains.alpha) * v[2];
      // v3 on the spillway, recovered from its controlled height:
      // h = (v1 + v3)/sqrt(2) with v1 = sqrt(eps) v3.
      const double v3_spill = std::numbers::sqrt2 * coupled_h / (1.0 + std::sqrt(gains.epsilon));
      v[1] = -std::sqrt(gains.gamma) * v3_spill;
      break;
    }
    case Side::Bottom:
      v[0] = on_spillway(arc) ? std::sqrt(gains.epsilon) * v[2] : v[2];
      break;
    case Side::Right:
      v[0] = std::sqrt(gains.beta) * v[2];
      break;
    case Side::Top:
      v[0] = v[2];
      break;
  }
  return es.from_characteristic(v);
}

// ---------------------------------------------------------------- partitions

bool GammaPartition::outgoing(std::size_t i, Side s) const {
  return contains(components.at(i).outgoing, s);
}

bool GammaPartition::incoming(std::size_t i, Side s) const {
  return contains(components.at(i).incoming, s);
}

GammaPartition sv_partition(const SaintVenantParams& p) {
  if (!(p.w_star > 0.0 && p.w_star < p.celerity())) {
    throw Error(ErrorKind::InvalidParams, "partition needs 0 < w* < sqrt(g H*)");
  }
  GammaPartition part;
  part.components.resize(3);
  for (Side s : all_sides) {
    const auto es = sv_eigenstructure(p, outward_normal(s));
    for (std::size_t i = 0; i < 3; ++i) {
      auto& split = part.components[i];
      (es.lambdas[i] >= 0.0 ? split.outgoing : split.incoming).push_back(s);
    }
  }
  return part;
}

GammaPartition diag_partition() {
  const auto spec = diagonal_example(1.0);
  GammaPartition part;
  part.components.resize(3);
  for (Side s : all_sides) {
    const auto n = outward_normal(s);
    for (std::size_t i = 0; i < 3; ++i) {
      const double an = spec.rays[i][0] * n[0] + spec.rays[i][1] * n[1];
      (an >= 0.0 ? part.components[i].outgoing : part.components[i].incoming).push_back(s);
    }
  }
  part.components[0].control = {Side::Left};
  part.components[0].zero = {Side::Bottom};
  part.components[1].control = {Side::Left};
  part.components[1].zero = {Side::Top};
  part.components[2].control = {Side::Top};
  part.components[2].zero = {Side::Right};
  return part;
}

// ---------------------------------------------------------------- diagonal control

double diag_control_constant(double c_l) {
  const double e = std::numbers::e;
  return 2.0 * (e - 1.0) + e * std::expm1(c_l + 1.0) / (c_l + 1.0);
}

double diag_outflow_integral(const DiagSystemSpec& spec, const DiagOutflowTraces& traces) {
  const auto weights = diag_weights(spec.c_l);
  const auto part = diag_partition();
  double total = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    for (Side s : part.components[i].outgoing) {
      const auto& vals = traces.values[i][static_cast<int>(s)];
      if (vals.empty()) continue;
      const auto n = outward_normal(s);
      const double an = spec.rays[i][0] * n[0] + spec.rays[i][1] * n[1];
      const double ds = 1.0 / static_cast<double>(vals.size());
      for (std::size_t f = 0; f < vals.size(); ++f) {
        const auto pt = boundary_point(s, (f + 0.5) * ds, 1.0, 1.0);
        total += an * vals[f] * vals[f] * weights(i, pt.xy[0], pt.xy[1]) * ds;
      }
    }
  }
  return total;
}

double diag_control_value(const DiagSystemSpec& spec, const DiagOutflowTraces& traces) {
  const double integral = diag_outflow_integral(spec, traces);
  if (integral < 0.0) {
    double scale = 0.0;
    for (const auto& comp : traces.values)
      for (const auto& side : comp)
        for (double v : side) scale = std::max(scale, v * v);
    if (integral < -1e-8 * 4.0 * scale) {
      throw Error(ErrorKind::NumericalError,
                  "negative outflow integral " + std::to_string(integral));
    }
    return 0.0;
  }
  return std::sqrt(integral / diag_control_constant(spec.c_l));
}

// ---------------------------------------------------------------- boundary integral

double BoundaryTraces::max_norm() const {
  double m = 0.0;
  for (Side s : all_sides) {
    for (std::size_t f = 0; f < count(s); ++f) {
      double q = 0.0;
      for (double v : face(s, f)) q += v * v;
      m = std::max(m, q);
    }
  }
  return std::sqrt(m);
}

double boundary_quadrature(const SystemSpec& sys,
                           const std::function<double(double, double)>& weight,
                           const BoundaryTraces& traces) {
  if (traces.n != sys.n) throw Error(ErrorKind::InvalidInput, "trace dimension mismatch");
  double total = 0.0;
  for (Side s : all_sides) {
    const std::size_t m = traces.count(s);
    if (m == 0) continue;
    const SymMatrix a = pencil(sys, outward_normal(s));
    const double len = (s == Side::Left || s == Side::Right) ? traces.height : traces.width;
    const double ds = len / static_cast<double>(m);
    for (std::size_t f = 0; f < m; ++f) {
      const auto w = traces.face(s, f);
      const auto aw = a.dense() * w;
      double q = 0.0;
      for (std::size_t k = 0; k < sys.n; ++k) q += w[k] * aw[k];
      const auto pt = boundary_point(s, (f + 0.5) / static_cast<double>(m), traces.width,
                                     traces.height);
      total += q * weight(pt.xy[0], pt.xy[1]) * ds;
    }
  }
  return total;
}

double quadrature_epsilon(const BoundaryTraces& traces) {
  const double m = traces.max_norm();
  return 1e-8 * traces.perimeter() * m * m;
}

}  // namespace hyperstab
