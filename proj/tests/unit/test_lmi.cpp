#include "doctest.h"

#include <cmath>

#include "hyperstab/error.hpp"
#include "hyperstab/lmi.hpp"
#include "oracles.hpp"

using namespace hyperstab;

namespace {

// The displayed Saint-Venant matrix, entry by entry.
Matrix sv_matrix(const SaintVenantParams& p, double m, double chi, double c) {
  const double a = c + m * p.w_star;
  const double s = m * std::sqrt(p.g * p.h_star);
  const double d = a - 4.0 * chi * p.k_drag;
  return Matrix{{a, s, 0.0}, {s, d, 0.0}, {0.0, 0.0, d}};
}

SaintVenantParams random_params(oracle::Rng& rng) {
  SaintVenantParams p;
  p.g = rng.uniform(1.0, 20.0);
  p.h_star = rng.uniform(0.2, 5.0);
  const double c = std::sqrt(p.g * p.h_star);
  p.w_star = rng.uniform(0.05, 0.95) * c;
  p.k_drag = rng.uniform(0.05, 5.0);
  p.l_coriolis = rng.uniform(0.05, 3.0);
  p.domain_l = rng.uniform(0.5, 6.0);
  return p;
}

}  // namespace

TEST_CASE("assemble_lmi examples") {
  const SystemSpec sv = saint_venant({});
  PotentialSpec p;
  p.decay_c = 1.0;
  p.chi = 0.0;
  CHECK(assemble_lmi(sv, p) == SymMatrix::identity(3));

  SaintVenantParams params;
  PotentialSpec q;
  q.m = {-0.7, 0.0};
  q.chi = 1.3;
  q.decay_c = 0.4;
  const Matrix ref = sv_matrix(params, -0.7, 1.3, 0.4);
  CHECK((assemble_lmi(sv, q).dense() - ref).max_abs() <= 1e-14);

  PotentialSpec q2 = q;
  q2.chi = 2.0 * q.chi;
  const Matrix diff = assemble_lmi(sv, q2).dense() - assemble_lmi(sv, q).dense();
  CHECK(diff(0, 0) == 0.0);
  CHECK(diff(1, 1) == doctest::Approx(-4.0 * q.chi * params.k_drag));
  CHECK(diff(2, 2) == doctest::Approx(-4.0 * q.chi * params.k_drag));
}

TEST_CASE("potential validation") {
  PotentialSpec p;
  p.decay_c = 0.0;
  CHECK_THROWS_AS(p.validate(), Error);
  p.decay_c = 1.0;
  p.chi = -1.0;
  CHECK_THROWS_AS(p.validate(), Error);
}

TEST_CASE("Saint-Venant decay bound") {
  SaintVenantParams p;
  CHECK(sv_max_decay_rate(p) == doctest::Approx(26.0 - std::sqrt(595.62)).epsilon(1e-12));
  CHECK(sv_max_decay_rate(p) < p.w_star);
  SaintVenantParams q;
  q.k_drag = 1e-9;
  CHECK(sv_max_decay_rate(q) == doctest::Approx(q.w_star - q.celerity()).epsilon(1e-6));

  const SystemSpec sv = saint_venant(p);
  PotentialSpec pot{{-1.0, 0.0}, 0.0, 1.4, 2.0 * p.domain_l};
  CHECK(check_feasibility(sv, pot).feasible);
  pot.decay_c = sv_max_decay_rate(p) + 1e-3;
  CHECK_FALSE(check_feasibility(sv, pot).feasible);
  pot.decay_c = sv_max_decay_rate(p);
  CHECK(check_feasibility(sv, pot).feasible);
  pot.decay_c = sv_max_decay_rate(p) + 0.1;
  CHECK_FALSE(check_feasibility(sv, pot).feasible);
  PotentialSpec zero{{0.0, 0.0}, 0.0, 1.0, 0.0};
  CHECK_FALSE(check_feasibility(sv, zero).feasible);
}

TEST_CASE("closed-form conditions") {
  SaintVenantParams p;
  CHECK(sv_feasibility_conditions(p, -2.0 * 1.0 / p.w_star, 1e6, 1.0));
  CHECK_FALSE(sv_feasibility_conditions(p, 0.0, 1e6, 1.0));
  // chi just above the minor ratio
  const double m = -1.5, c = 0.8;
  const double lead = c + m * p.w_star;
  const double chi = (lead * lead - m * m * p.gh()) / (4.0 * p.k_drag * lead) + 1e-9;
  CHECK(sv_feasibility_conditions(p, m, chi, c));
  CHECK(check_feasibility(saint_venant(p), {{m, 0.0}, 0.0, c, chi}).feasible);
}

TEST_CASE("closed-form conditions agree with the eigenvalue check") {
  oracle::Rng rng(77);
  for (int trial = 0; trial < 1000; ++trial) {
    const SaintVenantParams p = random_params(rng);
    const double m = rng.uniform(-4.0, 1.0);
    const double chi = rng.uniform(0.0, 10.0);
    const double c = rng.uniform(0.01, 5.0);
    const bool closed = sv_feasibility_conditions(p, m, chi, c);
    const bool eig = check_feasibility(saint_venant(p), {{m, 0.0}, 0.0, c, chi}).feasible;
    CHECK(closed == eig);
  }
}

TEST_CASE("feasibility is monotone in C and homogeneous") {
  oracle::Rng rng(12);
  const SystemSpec sv = saint_venant({});
  for (int trial = 0; trial < 200; ++trial) {
    PotentialSpec p{{rng.uniform(-3.0, 0.0), 0.0}, 0.0, rng.uniform(0.01, 3.0),
                    rng.uniform(0.0, 10.0)};
    const auto v = check_feasibility(sv, p);
    if (v.feasible) {
      PotentialSpec smaller = p;
      smaller.decay_c = p.decay_c * rng.uniform(0.01, 1.0);
      CHECK(check_feasibility(sv, smaller).feasible);
    }
    // assembled matrix is linear in (m, chi, C)
    const double s = rng.uniform(0.1, 10.0);
    PotentialSpec scaled{{s * p.m[0], 0.0}, 0.0, s * p.decay_c, s * p.chi};
    CHECK((assemble_lmi(sv, scaled).dense() - s * assemble_lmi(sv, p).dense()).max_abs() <=
          1e-12 * s * assemble_lmi(sv, p).max_abs());
  }
}

TEST_CASE("construct_potential_from_ssc") {
  SUBCASE("identity blocks") {
    SscSystem s;
    s.n = 2;
    s.r = 1;
    s.a = {Matrix{{-1.0}}, Matrix{{0.0}}};
    s.b = {Matrix{{0.0}}, Matrix{{0.0}}};
    s.c = {Matrix{{0.0}}, Matrix{{0.0}}};
    s.d = {Matrix{{0.0}}, Matrix{{0.0}}};
    s.e = Matrix{{1.0}};
    s.x1 = SymMatrix::identity(1);
    s.x2 = SymMatrix::identity(1);
    s.alpha = {1.0, 0.0};
    const auto cp = construct_potential_from_ssc(s, 1e-3);
    CHECK(cp.verdict.feasible);
    CHECK(cp.potential.m[0] == doctest::Approx(1.0 / cp.k));
    CHECK(cp.potential.m[1] == 0.0);
    CHECK(check_feasibility(cp.symmetric, cp.potential).feasible);
    // A(m) = diag(C - 1/K, C - 4): every K <= 1/C works, so the search
    // stops at the first candidate.
    CHECK(cp.k == std::ldexp(1.0, -10));
    CHECK_THROWS_AS(construct_potential_from_ssc(s, 10.0), Error);
    try {
      construct_potential_from_ssc(s, 10.0);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NoFeasibleK);
    }
  }
  SUBCASE("random systems") {
    oracle::Rng rng(4);
    for (int trial = 0; trial < 50; ++trial) {
      const auto gen = oracle::random_ssc(rng, static_cast<std::size_t>(rng.integer(1, 3)),
                                          static_cast<std::size_t>(rng.integer(1, 3)));
      const auto cp = construct_potential_from_ssc(gen.system, 1e-3);
      CHECK(check_feasibility(ssc_to_symmetric(gen.system), cp.potential).feasible);
    }
  }
  SUBCASE("invalid system") {
    oracle::Rng rng(5);
    auto gen = oracle::random_ssc(rng, 2, 2);
    gen.system.alpha = {-gen.system.alpha[0], -gen.system.alpha[1]};
    try {
      construct_potential_from_ssc(gen.system, 1e-3);
      FAIL("expected InvalidInput");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::InvalidInput);
    }
  }
}
