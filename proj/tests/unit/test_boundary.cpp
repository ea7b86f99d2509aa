#include "doctest.h"

#include <cmath>
#include <numbers>

#include "hyperstab/boundary.hpp"
#include "hyperstab/error.hpp"
#include "hyperstab/weights.hpp"
#include "oracles.hpp"

using namespace hyperstab;

namespace {

constexpr double r2 = 1.0 / std::numbers::sqrt2;

// Characteristic variables written out by hand for each side.
SvState chars(Side s, const SvState& w) {
  const auto n = outward_normal(s);
  return {r2 * (w[0] - n[0] * w[1] - n[1] * w[2]), -n[1] * w[1] + n[0] * w[2],
          r2 * (w[0] + n[0] * w[1] + n[1] * w[2])};
}

double normal_velocity(Side s, const SvState& w) {
  const auto n = outward_normal(s);
  return n[0] * w[1] + n[1] * w[2];
}

SvState random_state(oracle::Rng& rng) {
  return {rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
}

}  // namespace

TEST_CASE("geometry helpers") {
  CHECK(outward_normal(Side::Left) == std::array<double, 2>{-1.0, 0.0});
  CHECK(outward_normal(Side::Top) == std::array<double, 2>{0.0, 1.0});
  const auto p = boundary_point(Side::Bottom, 0.25, 3.0, 1.0);
  CHECK(p.xy[0] == doctest::Approx(0.75));
  CHECK(p.xy[1] == 0.0);
  CHECK_THROWS_AS(boundary_point(Side::Top, 1.5, 1.0, 1.0), Error);
  CHECK(on_spillway(0.5));
  CHECK_FALSE(on_spillway(0.2));
  CHECK_FALSE(on_spillway(0.7));
}

TEST_CASE("pencil") {
  const SystemSpec sv = saint_venant({});
  CHECK(pencil(sv, {1.0, 0.0}) == sv.a1);
  CHECK(pencil(sv, {0.0, -1.0}) == sv.a2 * -1.0);
  CHECK_THROWS_AS(pencil(sv, {1.0, 1.0}), Error);
}

TEST_CASE("Saint-Venant eigenstructure diagonalizes the pencil") {
  oracle::Rng rng(21);
  SaintVenantParams p;
  const SystemSpec sv = saint_venant(p);
  for (int trial = 0; trial < 100; ++trial) {
    const double th = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const std::array<double, 2> nu{std::cos(th), std::sin(th)};
    const auto es = sv_eigenstructure(p, nu);
    const Matrix& t = es.t_matrix;
    const Matrix tt = t.transpose() * t;
    CHECK((tt - Matrix::identity(3)).max_abs() <= 1e-14);
    const Matrix d = t.transpose() * pencil(sv, nu).dense() * t;
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(d(i, i) == doctest::Approx(es.lambdas[i]).epsilon(1e-12));
      for (std::size_t j = 0; j < 3; ++j)
        if (i != j) CHECK(std::abs(d(i, j)) <= 1e-12);
    }
    CHECK(es.lambdas[0] < es.lambdas[1]);
    CHECK(es.lambdas[1] < es.lambdas[2]);
    const SvState w = random_state(rng);
    const SvState back = es.from_characteristic(es.to_characteristic(w));
    for (std::size_t k = 0; k < 3; ++k) CHECK(back[k] == doctest::Approx(w[k]));
  }
}

TEST_CASE("gain bounds and validation") {
  SaintVenantParams p;
  const double c = p.celerity();
  CHECK(SvControlGains::alpha_max(p) == doctest::Approx((c - 2.0) / (c + 2.0)));
  CHECK(SvControlGains::beta_max(p) == doctest::Approx((c + 2.0) / (c - 2.0)));
  CHECK(SvControlGains::gamma_max(p, 0.5) == doctest::Approx(0.5 * (2.0 * 3.0 / 9.0) * c / 2.0));
  const auto g = SvControlGains::defaults(p);
  CHECK_NOTHROW(g.validate(p));
  SvControlGains bad = g;
  bad.alpha = 1.0;
  CHECK_THROWS_AS(bad.validate(p), Error);
  bad = g;
  bad.epsilon = 1.0;  // gamma_max drops to 0
  CHECK_THROWS_AS(bad.validate(p), Error);
  bad.gamma = 0.0;
  CHECK_NOTHROW(bad.validate(p));
}

TEST_CASE("feedback laws in characteristic form") {
  oracle::Rng rng(3);
  SaintVenantParams p;
  SvControlGains g{0.15, 1.3, 0.2, 0.4};
  g.validate(p);
  for (int trial = 0; trial < 50; ++trial) {
    const SvState tr = random_state(rng);
    const double hc = rng.uniform(-1, 1);

    const SvState left = sv_boundary_values(g, p, Side::Left, 0.3, tr, hc);
    const SvState vl = chars(Side::Left, left);
    CHECK(vl[0] == doctest::Approx(std::sqrt(g.alpha) * vl[2]));
    CHECK(vl[2] == doctest::Approx(chars(Side::Left, tr)[2]));
    const double v3_spill = std::numbers::sqrt2 * hc / (1.0 + std::sqrt(g.epsilon));
    CHECK(vl[1] == doctest::Approx(-std::sqrt(g.gamma) * v3_spill));

    const SvState right = sv_boundary_values(g, p, Side::Right, 0.6, tr, hc);
    const SvState vr = chars(Side::Right, right);
    const SvState vr_in = chars(Side::Right, tr);
    CHECK(vr[0] == doctest::Approx(std::sqrt(g.beta) * vr[2]));
    CHECK(vr[1] == doctest::Approx(vr_in[1]));
    CHECK(vr[2] == doctest::Approx(vr_in[2]));

    const SvState spill = sv_boundary_values(g, p, Side::Bottom, 0.5, tr, hc);
    const SvState vs = chars(Side::Bottom, spill);
    CHECK(vs[0] == doctest::Approx(std::sqrt(g.epsilon) * vs[2]));

    for (Side s : {Side::Top, Side::Bottom}) {
      const SvState wall = sv_boundary_values(g, p, s, 0.1, tr, hc);
      CHECK(std::abs(normal_velocity(s, wall)) <= 1e-14);
    }
    for (Side s : all_sides) {
      const SvState wall = sv_wall_values(p, s, tr);
      CHECK(std::abs(normal_velocity(s, wall)) <= 1e-14);
      const SvState tangential = chars(s, wall);
      CHECK(tangential[1] == doctest::Approx(chars(s, tr)[1]));
    }
  }
  CHECK_THROWS_AS(sv_boundary_values(g, p, Side::Top, -0.1, {}, 0.0), Error);
}

TEST_CASE("primitive forms of special gains") {
  SaintVenantParams p;
  SvControlGains g = SvControlGains::defaults(p);
  g.alpha = 0.0;
  g.gamma = 0.0;
  const SvState tr{0.7, -0.3, 0.2};
  const SvState left = sv_boundary_values(g, p, Side::Left, 0.5, tr, 0.4);
  CHECK(left[1] == doctest::Approx(-left[0]));
  CHECK(left[2] == 0.0);

  g.epsilon = 1.0;
  const SvState spill = sv_boundary_values(g, p, Side::Bottom, 0.5, tr, 0.0);
  const SvState wall = sv_wall_values(p, Side::Bottom, tr);
  for (std::size_t k = 0; k < 3; ++k) CHECK(spill[k] == doctest::Approx(wall[k]));

  g.beta = 1.0;
  const SvState right = sv_boundary_values(g, p, Side::Right, 0.5, tr, 0.0);
  CHECK(right[1] == doctest::Approx(0.0));
}

TEST_CASE("partitions") {
  const auto sv = sv_partition({});
  CHECK(sv.components.size() == 3);
  CHECK(sv.incoming(0, Side::Left));
  CHECK(sv.incoming(1, Side::Left));
  CHECK(sv.outgoing(2, Side::Left));
  CHECK(sv.incoming(0, Side::Right));
  CHECK(sv.outgoing(1, Side::Right));
  CHECK(sv.outgoing(2, Side::Right));
  SaintVenantParams fast;
  fast.w_star = 4.4;
  CHECK_NOTHROW(sv_partition(fast));

  const auto d = diag_partition();
  CHECK(d.outgoing(0, Side::Right));
  CHECK(d.outgoing(0, Side::Top));
  CHECK(d.incoming(0, Side::Left));
  CHECK(d.outgoing(1, Side::Bottom));
  CHECK(d.incoming(1, Side::Top));
  CHECK(d.outgoing(2, Side::Left));
  CHECK(d.incoming(2, Side::Right));
  CHECK(d.components[2].control == std::vector<Side>{Side::Top});
  CHECK(d.components[1].zero == std::vector<Side>{Side::Top});
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(d.components[i].outgoing.size() + d.components[i].incoming.size() == 4);
    CHECK(d.components[i].control.size() + d.components[i].zero.size() ==
          d.components[i].incoming.size());
  }
}

TEST_CASE("diagonal control constant") {
  const double e = std::numbers::e;
  CHECK(diag_control_constant(0.0) == doctest::Approx((e - 1.0) * (2.0 + e)));
  CHECK(diag_control_constant(4.0) ==
        doctest::Approx(2.0 * (e - 1.0) + e * (std::exp(5.0) - 1.0) / 5.0));
}

TEST_CASE("diagonal outflow integral against the exact side integrals") {
  const double c = 4.0;
  const auto spec = diagonal_example(c);
  const auto part = diag_partition();
  DiagOutflowTraces tr;
  const std::size_t m = 2000;
  for (std::size_t i = 0; i < 3; ++i)
    for (Side s : part.components[i].outgoing) tr.values[i][static_cast<int>(s)].assign(m, 1.0);
  const double e = std::numbers::e;
  const double exact = std::exp(-(c + 3)) * (e - 1) + e * (1 - std::exp(-(c + 3))) / (c + 3) +
                       std::exp(-(c + 1)) * (e - 1) + (1 - std::exp(-(c + 1))) / (c + 1) +
                       (e - 1) + std::expm1(c + 1) / (c + 1);
  const double got = diag_outflow_integral(spec, tr);
  CHECK(got == doctest::Approx(exact).epsilon(1e-5));
  CHECK(diag_control_value(spec, tr) ==
        doctest::Approx(std::sqrt(got / diag_control_constant(c))));

  DiagOutflowTraces zero;
  for (std::size_t i = 0; i < 3; ++i)
    for (Side s : part.components[i].outgoing) zero.values[i][static_cast<int>(s)].assign(8, 0.0);
  CHECK(diag_control_value(spec, zero) == 0.0);
}

TEST_CASE("boundary quadrature") {
  SystemSpec adv;
  adv.n = 1;
  adv.a1 = SymMatrix{{1.0}};
  adv.a2 = SymMatrix{{0.0}};
  adv.b = Matrix{{0.0}};
  BoundaryTraces tr;
  tr.n = 1;
  tr.width = 2.0;
  tr.height = 1.0;
  tr.faces[static_cast<int>(Side::Left)] = {1.0, 1.0, 1.0, 1.0};
  tr.faces[static_cast<int>(Side::Right)] = {2.0, 2.0};
  tr.faces[static_cast<int>(Side::Bottom)] = {5.0, 5.0, 5.0};
  tr.faces[static_cast<int>(Side::Top)] = {5.0};
  const auto one = [](double, double) { return 1.0; };
  // right: 4 * 1, left: -1 * 1, bottom/top: A2 = 0
  CHECK(boundary_quadrature(adv, one, tr) == doctest::Approx(3.0));
  const auto lin = [](double x, double) { return 3.0 - x; };
  CHECK(boundary_quadrature(adv, lin, tr) == doctest::Approx(4.0 * 1.0 - 3.0));
  CHECK(tr.max_norm() == 5.0);
  CHECK(quadrature_epsilon(tr) == doctest::Approx(1e-8 * 6.0 * 25.0));

  tr.n = 2;
  CHECK_THROWS_AS(boundary_quadrature(adv, one, tr), Error);

  // constant state, constant weight: opposite sides cancel
  const SystemSpec sv = saint_venant({});
  BoundaryTraces c;
  c.n = 3;
  c.width = 3.0;
  for (Side s : all_sides)
    for (int f = 0; f < 7; ++f) c.faces[static_cast<int>(s)].insert(c.faces[static_cast<int>(s)].end(), {0.3, -0.2, 0.9});
  CHECK(std::abs(boundary_quadrature(sv, one, c)) <= 1e-13);
}
