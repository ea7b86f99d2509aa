#include "doctest.h"

#include <cmath>
#include <limits>
#include <numbers>

#include "hyperstab/error.hpp"
#include "hyperstab/experiments.hpp"
#include "hyperstab/solver.hpp"

using namespace hyperstab;

namespace {

SystemSpec advection(double a) {
  SystemSpec s;
  s.n = 1;
  s.a1 = SymMatrix{{a}};
  s.a2 = SymMatrix{{0.0}};
  s.b = Matrix{{0.0}};
  return s;
}

SystemSpec sv_without_source() {
  SystemSpec s = saint_venant({});
  s.b = Matrix(3, 3, 0.0);
  return s;
}

GridState sinusoid(const Grid& g, std::size_t n) {
  return GridState::from_function(g, n, [](double x, double y, std::span<double> out) {
    for (std::size_t k = 0; k < out.size(); ++k)
      out[k] = std::sin(2.0 * std::numbers::pi * (x + 0.3 * k)) * std::cos(std::numbers::pi * y);
  });
}

}  // namespace

TEST_CASE("wave speed and time step") {
  const SystemSpec sv = saint_venant({});
  CHECK(max_wave_speed(sv) == doctest::Approx(2.0 + std::sqrt(19.62)));
  const Grid g = Grid::uniform(3.0, 1.0, 30, 20);
  MusclSolver s(sv, g);
  CHECK(s.stable_dt(0.5) == doctest::Approx(0.5 * 0.05 / max_wave_speed(sv)));
}

TEST_CASE("constants are preserved without a source") {
  const SystemSpec sys = sv_without_source();
  const Grid g = Grid::uniform(3.0, 1.0, 24, 8);
  const GridState init = GridState::from_function(g, 3, [](double, double, std::span<double> o) {
    o[0] = 0.7;
    o[1] = -1.1;
    o[2] = 0.25;
  });
  const auto res = run(sys, init, BoundaryPolicy::uniform(Transmissive{}), 0.5, 0.3);
  CHECK(res.steps > 0);
  double err = 0.0;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      for (std::size_t k = 0; k < 3; ++k)
        err = std::max(err, std::abs(res.final_state.at(i, j, k) - init.at(i, j, k)));
  CHECK(err <= 1e-14);
}

TEST_CASE("scalar rhs reduces to upwind differences at extrema") {
  for (double a : {1.0, -1.0, 2.5}) {
    const Grid g = Grid::uniform(1.0, 1.0, 12, 1);
    GridState st(g, 1);
    for (int i = 0; i < g.nx; ++i) st.at(i, 0, 0) = (i % 2 == 0 ? 1.0 : -0.5) * (1.0 + 0.1 * i);
    const SystemSpec sys = advection(a);
    fill_ghosts(st, BoundaryPolicy::uniform(Transmissive{}), sys);
    MusclSolver solver(sys, g);
    GridState out(g, 1);
    solver.rhs(st, out);
    for (int i = 1; i + 1 < g.nx; ++i) {
      const double u = st.at(i, 0, 0);
      const double expected = a > 0 ? -a * (u - st.at(i - 1, 0, 0)) / g.dx
                                    : -a * (st.at(i + 1, 0, 0) - u) / g.dx;
      CHECK(out.at(i, 0, 0) == doctest::Approx(expected).epsilon(1e-13));
    }
  }
}

TEST_CASE("scheme is homogeneous of degree one") {
  const SystemSpec sys = saint_venant({});
  const Grid g = Grid::uniform(3.0, 1.0, 30, 10);
  const GridState w = sinusoid(g, 3);
  GridState scaled = w;
  for (double& v : scaled.raw()) v *= -2.5;
  const SaintVenantParams p;
  const auto pol = BoundaryPolicy::saint_venant(p, SvControlGains::defaults(p));
  const auto a = run(sys, w, pol, 0.5, 0.2);
  const auto b = run(sys, scaled, pol, 0.5, 0.2);
  CHECK(a.steps == b.steps);
  double err = 0.0, scale = 0.0;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      for (std::size_t k = 0; k < 3; ++k) {
        err = std::max(err, std::abs(b.final_state.at(i, j, k) + 2.5 * a.final_state.at(i, j, k)));
        scale = std::max(scale, std::abs(a.final_state.at(i, j, k)));
      }
  CHECK(err <= 1e-12 * scale);
}

TEST_CASE("run lands on t_end and reports observers") {
  const SystemSpec sys = advection(1.0);
  const Grid g = Grid::uniform(1.0, 1.0, 20, 1);
  const GridState init = sinusoid(g, 1);
  std::size_t calls = 0;
  double last_t = -1.0;
  const auto res = run(sys, init, BoundaryPolicy::uniform(Transmissive{}), 0.5, 0.123,
                       {[&](const Snapshot& s) {
                         ++calls;
                         CHECK(s.state.time() > last_t);
                         last_t = s.state.time();
                         CHECK(s.step + 1 == calls);
                       }});
  CHECK(res.final_state.time() == doctest::Approx(0.123).epsilon(1e-14));
  CHECK(calls == res.steps + 1);
  CHECK(res.times.size() == res.steps + 1);

  const auto zero = run(sys, init, BoundaryPolicy::uniform(Transmissive{}), 0.5, 0.0);
  CHECK(zero.steps == 0);
  CHECK(zero.final_state.raw()[zero.final_state.offset(3, 0)] == init.at(3, 0, 0));
}

TEST_CASE("non-finite values raise BlowUp") {
  const SystemSpec sys = advection(1.0);
  const Grid g = Grid::uniform(1.0, 1.0, 10, 1);
  GridState init(g, 1);
  init.at(5, 0, 0) = std::numeric_limits<double>::infinity();
  try {
    run(sys, init, BoundaryPolicy::uniform(Transmissive{}), 0.5, 1.0);
    FAIL("expected BlowUpError");
  } catch (const BlowUpError& e) {
    CHECK(e.kind() == ErrorKind::BlowUp);
    CHECK(e.step() == 1);
  }
}

TEST_CASE("ghost layers carry the face state") {
  const SaintVenantParams p;
  const SystemSpec sys = saint_venant(p);
  const Grid g = Grid::uniform(3.0, 1.0, 12, 6);
  GridState st = sinusoid(g, 3);
  const auto pol = BoundaryPolicy::saint_venant(p, SvControlGains::defaults(p));
  const auto fill = fill_ghosts(st, pol, sys);
  CHECK(fill.faces.count(Side::Left) == 6);
  CHECK(fill.faces.count(Side::Bottom) == 12);
  for (int j = 0; j < g.ny; ++j) {
    const auto face = fill.faces.face(Side::Right, static_cast<std::size_t>(j));
    for (std::size_t k = 0; k < 3; ++k) {
      CHECK(st.at(g.nx, j, k) == face[k]);
      CHECK(st.at(g.nx + 1, j, k) == face[k]);
    }
  }
  // top wall: zero normal velocity
  for (int i = 0; i < g.nx; ++i)
    CHECK(std::abs(fill.faces.face(Side::Top, static_cast<std::size_t>(i))[2]) <= 1e-14);

  const auto zero = fill_ghosts(st, BoundaryPolicy::uniform(ZeroState{}), sys);
  CHECK(zero.faces.max_norm() == 0.0);
  CHECK(st.at(-1, 2, 1) == 0.0);

  GridState scalar(Grid::uniform(1.0, 1.0, 4, 4), 1);
  CHECK_THROWS_AS(fill_ghosts(scalar, pol, advection(1.0)), Error);
}

TEST_CASE("diagonal feedback dissipates the weighted energy") {
  DiagExperiment e;
  e.grid = {0.0, 24, 24};
  e.t_end = 0.5;
  const auto res = run_experiment(diag_setup(e));
  const auto& l = res.lyapunov[0];
  for (std::size_t n = 1; n < l.size(); ++n) CHECK(l[n] <= l[n - 1] * (1.0 + 1e-12));
  CHECK(l.back() < 0.2 * l.front());
  for (double u : res.control_u) CHECK(u >= 0.0);
}
