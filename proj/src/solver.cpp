#include "hyperstab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hyperstab/error.hpp"

namespace hyperstab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

inline double minmod(double a, double b) {
  if (a * b <= 0.0) return 0.0;
  return std::abs(a) < std::abs(b) ? a : b;
}

std::size_t face_count(const Grid& g, Side s) {
  return (s == Side::Left || s == Side::Right) ? static_cast<std::size_t>(g.ny)
                                               : static_cast<std::size_t>(g.nx);
}

/// Interior cell adjacent to face `f` of side `s`.
std::pair<int, int> adjacent_cell(const Grid& g, Side s, std::size_t f) {
  const int k = static_cast<int>(f);
  switch (s) {
    case Side::Left: return {0, k};
    case Side::Right: return {g.nx - 1, k};
    case Side::Bottom: return {k, 0};
    case Side::Top: return {k, g.ny - 1};
  }
  return {0, 0};
}

/// Face midpoint in physical coordinates.
std::array<double, 2> face_point(const Grid& g, Side s, std::size_t f) {
  switch (s) {
    case Side::Left: return {g.x0, g.yc(static_cast<int>(f))};
    case Side::Right: return {g.x0 + g.width(), g.yc(static_cast<int>(f))};
    case Side::Bottom: return {g.xc(static_cast<int>(f)), g.y0};
    case Side::Top: return {g.xc(static_cast<int>(f)), g.y0 + g.height()};
  }
  return {0.0, 0.0};
}

SvState as_sv(std::span<const double> w) { return {w[0], w[1], w[2]}; }

void require_sv(const SystemSpec& sys) {
  if (sys.n != 3) {
    throw Error(ErrorKind::InvalidInput, "Saint-Venant boundary policy on a system with n = " +
                                             std::to_string(sys.n));
  }
}

/// Linear interpolation of the bottom face heights at physical x.
double bottom_height_at(const Grid& g, const std::vector<double>& bottom, std::size_t n,
                        double x) {
  const std::size_t m = bottom.size() / n;
  const double pos = std::clamp((x - g.x0) / g.dx - 0.5, 0.0, static_cast<double>(m - 1));
  const std::size_t lo = std::min(static_cast<std::size_t>(pos), m - 1);
  const std::size_t hi = std::min(lo + 1, m - 1);
  const double t = pos - static_cast<double>(lo);
  return (1.0 - t) * bottom[lo * n] + t * bottom[hi * n];
}

}  // namespace

BoundaryPolicy BoundaryPolicy::uniform(const SidePolicy& p) {
  BoundaryPolicy b;
  b.sides.fill(p);
  return b;
}

BoundaryPolicy BoundaryPolicy::saint_venant(const SaintVenantParams& p, const SvControlGains& g) {
  p.validate();
  g.validate(p);
  return uniform(SvControl{p, g});
}

BoundaryPolicy BoundaryPolicy::diagonal(const DiagSystemSpec& spec) {
  return uniform(DiagControl{spec});
}

GhostFill fill_ghosts(GridState& state, const BoundaryPolicy& policy, const SystemSpec& sys) {
  const Grid& g = state.grid();
  const std::size_t n = state.n();
  if (n != sys.n) throw Error(ErrorKind::InvalidInput, "state and system dimension differ");

  GhostFill out;
  out.faces.n = n;
  out.faces.width = g.width();
  out.faces.height = g.height();

  // Feedback value for the diagonal example, from the interior traces.
  const DiagControl* diag = nullptr;
  for (const auto& p : policy.sides)
    if (const auto* d = std::get_if<DiagControl>(&p)) diag = d;
  const GammaPartition diag_split = diag ? diag_partition() : GammaPartition{};
  if (diag) {
    if (n != 3) throw Error(ErrorKind::InvalidInput, "diagonal control needs n = 3");
    DiagOutflowTraces tr;
    for (std::size_t i = 0; i < 3; ++i) {
      for (Side s : diag_split.components[i].outgoing) {
        auto& vals = tr.values[i][static_cast<int>(s)];
        for (std::size_t f = 0; f < face_count(g, s); ++f) {
          const auto [ci, cj] = adjacent_cell(g, s, f);
          vals.push_back(state.at(ci, cj, i));
        }
      }
    }
    out.control_u = diag_control_value(diag->spec, tr);
  }

  // Bottom first: the Saint-Venant left law reads the bottom face heights.
  for (Side s : {Side::Bottom, Side::Top, Side::Right, Side::Left}) {
    const std::size_t m = face_count(g, s);
    auto& faces = out.faces.faces[static_cast<int>(s)];
    faces.assign(m * n, 0.0);
    const SidePolicy& pol = policy[s];
    for (std::size_t f = 0; f < m; ++f) {
      const auto [ci, cj] = adjacent_cell(g, s, f);
      const auto trace = state.cell(ci, cj);
      std::span<double> face(faces.data() + f * n, n);
      std::visit(
          overloaded{
              [&](const Transmissive&) { std::copy(trace.begin(), trace.end(), face.begin()); },
              [&](const ZeroState&) {},
              [&](const WallNormalZero& w) {
                require_sv(sys);
                const auto b = sv_wall_values(w.params, s, as_sv(trace));
                std::copy(b.begin(), b.end(), face.begin());
              },
              [&](const SvControl& c) {
                require_sv(sys);
                const double arc = (static_cast<double>(f) + 0.5) / static_cast<double>(m);
                double coupled_h = 0.0;
                if (s == Side::Left) {
                  const double y = g.yc(static_cast<int>(f)) - g.y0;
                  const double x = g.x0 + c.params.domain_l * (y + 1.0) / 3.0;
                  coupled_h = bottom_height_at(g, out.faces.faces[static_cast<int>(Side::Bottom)],
                                               n, x);
                }
                const auto b = sv_boundary_values(c.gains, c.params, s, arc, as_sv(trace),
                                                  coupled_h);
                std::copy(b.begin(), b.end(), face.begin());
              },
              [&](const DiagControl&) {
                for (std::size_t i = 0; i < n; ++i) {
                  const auto& split = diag_split.components[i];
                  if (std::find(split.control.begin(), split.control.end(), s) !=
                      split.control.end()) {
                    face[i] = out.control_u;
                  } else if (std::find(split.zero.begin(), split.zero.end(), s) !=
                             split.zero.end()) {
                    face[i] = 0.0;
                  } else {
                    face[i] = trace[i];
                  }
                }
              },
              [&](const Prescribed& p) {
                const auto xy = face_point(g, s, f);
                p.value(state.time(), xy[0], xy[1], face);
              },
          },
          pol);
    }

    for (std::size_t f = 0; f < m; ++f) {
      const auto [ci, cj] = adjacent_cell(g, s, f);
      const double* src = faces.data() + f * n;
      for (int layer = 1; layer <= g.ghost; ++layer) {
        int gi = ci;
        int gj = cj;
        switch (s) {
          case Side::Left: gi = -layer; break;
          case Side::Right: gi = g.nx - 1 + layer; break;
          case Side::Bottom: gj = -layer; break;
          case Side::Top: gj = g.ny - 1 + layer; break;
        }
        std::copy(src, src + n, state.cell(gi, gj).begin());
      }
    }
  }
  return out;
}

double max_wave_speed(const SystemSpec& sys) {
  double s = 0.0;
  for (std::size_t k = 0; k < 2; ++k) {
    const auto eig = eigen_sym(sys.jacobian(k));
    s = std::max({s, std::abs(eig.eigenvalues.front()), std::abs(eig.eigenvalues.back())});
  }
  return s;
}

// ---------------------------------------------------------------- MusclSolver

MusclSolver::MusclSolver(SystemSpec sys, const Grid& grid)
    : sys_(std::move(sys)), grid_(grid), stage_(grid, sys_.n), work_(grid, sys_.n) {
  sys_.validate();
  const std::size_t n = sys_.n;
  max_speed_ = hyperstab::max_wave_speed(sys_);
  for (std::size_t k = 0; k < 2; ++k) {
    const auto eig = eigen_sym(sys_.jacobian(k));
    a_plus_[k].assign(n * n, 0.0);
    a_minus_[k].assign(n * n, 0.0);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t e = 0; e < n; ++e) {
          const double l = eig.eigenvalues[e];
          const double t = eig.eigenvectors(r, e) * eig.eigenvectors(c, e);
          a_plus_[k][r * n + c] += std::max(l, 0.0) * t;
          a_minus_[k][r * n + c] += std::min(l, 0.0) * t;
        }
  }
  b_.assign(sys_.b.data().begin(), sys_.b.data().end());
  const std::size_t longest = static_cast<std::size_t>(std::max(grid.nx, grid.ny)) + 1;
  face_l_.assign(longest * n, 0.0);
  face_r_.assign(longest * n, 0.0);
}

double MusclSolver::stable_dt(double cfl) const {
  if (!(cfl > 0.0 && cfl <= 1.0)) throw Error(ErrorKind::InvalidInput, "cfl must lie in (0, 1]");
  if (!(max_speed_ > 0.0)) throw Error(ErrorKind::InvalidInput, "system has zero wave speed");
  return cfl * std::min(grid_.dx, grid_.dy) / max_speed_;
}

void MusclSolver::rhs(const GridState& u, GridState& out) {
  const std::size_t n = sys_.n;
  const Grid& g = grid_;
  std::vector<double> flux(n);

  // Sweep along one grid line: `cell(idx)` gives the state at line index idx
  // (ghosts included), `accumulate(idx, flux_diff)` adds to the interior rhs.
  auto sweep = [&](int cells, std::size_t k, double h, auto&& cell, auto&& target) {
    const double* ap = a_plus_[k].data();
    const double* am = a_minus_[k].data();
    // Reconstructed left/right states at faces idx - 1/2, idx = 0..cells.
    for (int f = 0; f <= cells; ++f) {
      const double* ul2 = cell(f - 2);
      const double* ul = cell(f - 1);
      const double* ur = cell(f);
      const double* ur2 = cell(f + 1);
      double* fl = face_l_.data() + static_cast<std::size_t>(f) * n;
      double* fr = face_r_.data() + static_cast<std::size_t>(f) * n;
      for (std::size_t c = 0; c < n; ++c) {
        fl[c] = ul[c] + 0.5 * minmod(ul[c] - ul2[c], ur[c] - ul[c]);
        fr[c] = ur[c] - 0.5 * minmod(ur[c] - ul[c], ur2[c] - ur[c]);
      }
    }
    // Upwind flux at face f, difference into cells.
    std::vector<double> prev(n), cur(n);
    for (int f = 0; f <= cells; ++f) {
      const double* fl = face_l_.data() + static_cast<std::size_t>(f) * n;
      const double* fr = face_r_.data() + static_cast<std::size_t>(f) * n;
      for (std::size_t r = 0; r < n; ++r) {
        double s = 0.0;
        for (std::size_t c = 0; c < n; ++c) s += ap[r * n + c] * fl[c] + am[r * n + c] * fr[c];
        cur[r] = s;
      }
      if (f > 0) {
        double* dst = target(f - 1);
        for (std::size_t r = 0; r < n; ++r) dst[r] -= (cur[r] - prev[r]) / h;
      }
      std::swap(prev, cur);
    }
  };

  auto raw_in = u.raw();
  auto raw_out = out.raw();
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const double* w = raw_in.data() + u.offset(i, j);
      double* dst = raw_out.data() + out.offset(i, j);
      for (std::size_t r = 0; r < n; ++r) {
        double s = 0.0;
        for (std::size_t c = 0; c < n; ++c) s += b_[r * n + c] * w[c];
        dst[r] = -s;
      }
    }
  }
  for (int j = 0; j < g.ny; ++j) {
    sweep(
        g.nx, 0, g.dx, [&](int i) { return raw_in.data() + u.offset(i, j); },
        [&](int i) { return raw_out.data() + out.offset(i, j); });
  }
  for (int i = 0; i < g.nx; ++i) {
    sweep(
        g.ny, 1, g.dy, [&](int j) { return raw_in.data() + u.offset(i, j); },
        [&](int j) { return raw_out.data() + out.offset(i, j); });
  }
}

StepReport MusclSolver::step(GridState& state, const BoundaryPolicy& policy, double dt,
                             std::size_t step_index) {
  if (!(dt > 0.0)) throw Error(ErrorKind::InvalidInput, "time step must be positive");
  const double t0 = state.time();

  fill_ghosts(state, policy, sys_);
  rhs(state, work_);
  stage_ = state;
  stage_.axpby(1.0, dt, work_);
  stage_.set_time(t0 + dt);

  fill_ghosts(stage_, policy, sys_);
  rhs(stage_, work_);
  stage_.axpby(1.0, dt, work_);
  state.axpby(0.5, 0.5, stage_);
  state.set_time(t0 + dt);

  if (!state.interior_finite()) {
    throw BlowUpError(step_index, state.time(), "non-finite state");
  }
  return {dt, max_speed_, std::sqrt(state.l2_norm_squared())};
}

StepReport muscl_step(GridState& state, const SystemSpec& sys, const BoundaryPolicy& policy,
                      double cfl) {
  MusclSolver solver(sys, state.grid());
  return solver.step(state, policy, solver.stable_dt(cfl));
}

RunResult run(const SystemSpec& sys, GridState init, const BoundaryPolicy& policy, double cfl,
              double t_end, const std::vector<Observer>& observers) {
  if (!(t_end >= 0.0)) throw Error(ErrorKind::InvalidInput, "t_end must be nonnegative");
  MusclSolver solver(sys, init.grid());
  const double dt_max = solver.stable_dt(cfl);

  RunResult res;
  res.final_state = std::move(init);
  GridState& state = res.final_state;
  const double t_start = state.time();
  const double stop = t_start + t_end;
  const double slack = 1e-12 * std::max(1.0, stop);

  auto notify = [&](std::size_t step) {
    const GhostFill fill = fill_ghosts(state, policy, sys);
    res.times.push_back(state.time());
    for (const auto& obs : observers) obs(Snapshot{state, fill, step});
  };

  notify(0);
  while (stop - state.time() > slack) {
    const double dt = std::min(dt_max, stop - state.time());
    const std::size_t index = res.steps + 1;
    res.reports.push_back(solver.step(state, policy, dt, index));
    res.steps = index;
    if (stop - state.time() <= slack) state.set_time(stop);
    notify(index);
  }
  return res;
}

}  // namespace hyperstab
