#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "hyperstab/error.hpp"
#include "hyperstab/systems.hpp"
#include "oracles.hpp"

using namespace hyperstab;

namespace {

SscSystem identity_ssc() {
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
  return s;
}

}  // namespace

TEST_CASE("Saint-Venant system layout") {
  SaintVenantParams p;
  p.g = 8.0;
  p.h_star = 2.0;  // gH* = 16
  const SystemSpec s = saint_venant(p);
  CHECK(s.n == 3);
  CHECK(s.a1(0, 0) == 2.0);
  CHECK(s.a1(0, 1) == doctest::Approx(4.0));
  CHECK(s.a1(0, 2) == 0.0);
  CHECK(s.a2(0, 2) == doctest::Approx(4.0));
  for (std::size_t j = 0; j < 3; ++j) CHECK(s.b(0, j) == 0.0);

  p.k_drag = 1.0;
  p.l_coriolis = 0.5;
  const SymMatrix bs = saint_venant(p).b_sym();
  CHECK(bs == SymMatrix{{0, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  CHECK(saint_venant(p).labels == std::vector<std::string>{"h", "w", "v"});
}

TEST_CASE("Saint-Venant parameter validation names the bound") {
  SaintVenantParams p;
  p.w_star = 10.0;
  try {
    p.validate();
    FAIL("expected InvalidParams");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidParams);
    CHECK(std::string(e.what()).find("w") != std::string::npos);
  }
  SaintVenantParams q;
  q.k_drag = 0.0;
  CHECK_THROWS_AS(q.validate(), Error);
  SaintVenantParams r;
  r.v_star = 0.1;
  CHECK_THROWS_AS(saint_venant(r), Error);
}

TEST_CASE("diagonal example") {
  const auto d = diagonal_example(4.0);
  CHECK(d.rays[0] == std::array<double, 2>{1.0, 1.0});
  CHECK(d.rays[1] == std::array<double, 2>{1.0, -1.0});
  CHECK(d.rays[2] == std::array<double, 2>{-1.0, -1.0});
  CHECK(d.c_l == 4.0);
  CHECK(determinant(d.b.dense()) == doctest::Approx(-1.0));
  const SystemSpec s = d.to_system();
  CHECK(s.a2 == SymMatrix{{1, 0, 0}, {0, -1, 0}, {0, 0, -1}});
  CHECK_THROWS_AS(diagonal_example(0.0), Error);
  CHECK_THROWS_AS(diagonal_example(-1.0), Error);
}

TEST_CASE("validate_ssc on the identity example") {
  const auto rep = validate_ssc(identity_ssc());
  CHECK(rep.all_ok());
  CHECK(rep.failures().empty());

  SscSystem s = identity_ssc();
  s.e = Matrix{{1e-20}};
  const auto bad = validate_ssc(s);
  CHECK_FALSE(bad.dissipative_ok);
  CHECK_FALSE(bad.all_ok());
  CHECK_FALSE(bad.failures().empty());

  SscSystem t = identity_ssc();
  t.alpha = {-1.0, 0.0};
  CHECK_FALSE(validate_ssc(t).drift_ok);

  SscSystem u = identity_ssc();
  u.b[0] = Matrix{{1.0}};  // A0 Abar no longer symmetric
  CHECK_FALSE(validate_ssc(u).symmetrizer_ok);
  CHECK_THROWS_AS(ssc_to_symmetric(u), Error);

  SscSystem v = identity_ssc();
  v.d[0] = Matrix(2, 2, 0.0);
  CHECK_THROWS_AS(validate_ssc(v), Error);
}

TEST_CASE("identity symmetrizer leaves the system unchanged") {
  const SscSystem s = identity_ssc();
  const SystemSpec sym = ssc_to_symmetric(s);
  CHECK(sym.a1.dense() == s.jacobian(0));
  CHECK(sym.b == s.source());
}

TEST_CASE("scalar symmetrizer preserves the drift spectrum") {
  oracle::Rng rng(8);
  SscSystem s;
  s.n = 3;
  s.r = 1;
  const Matrix a = oracle::random_symmetric(2, rng);
  s.a = {a, Matrix(2, 2, 0.0)};
  s.b = {Matrix(2, 1, 0.0), Matrix(2, 1, 0.0)};
  s.c = {Matrix(1, 2, 0.0), Matrix(1, 2, 0.0)};
  s.d = {Matrix{{0.3}}, Matrix{{0.0}}};
  s.e = Matrix{{2.0}};
  s.x1 = SymMatrix::identity(2) * 4.0;
  s.x2 = SymMatrix::identity(1);
  s.alpha = {1.0, 0.0};
  const SystemSpec sym = ssc_to_symmetric(s);
  const auto ref = oracle::bisection_spectrum(a);
  const auto got = oracle::bisection_spectrum(sym.a1.dense().block(0, 0, 2, 2));
  for (std::size_t i = 0; i < 2; ++i) CHECK(got[i] == doctest::Approx(ref[i]).epsilon(1e-12));
}

TEST_CASE("random SSC systems: validation, symmetrization and spectra") {
  oracle::Rng rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t p = static_cast<std::size_t>(rng.integer(1, 3));
    const std::size_t r = static_cast<std::size_t>(rng.integer(1, 3));
    const auto gen = oracle::random_ssc(rng, p, r);
    const SscSystem& s = gen.system;
    const auto rep = validate_ssc(s);
    CHECK(rep.all_ok());
    CHECK(rep.drift_max_real < 0.0);
    CHECK(rep.drift_symmetrized_max == doctest::Approx(rep.drift_max_real).epsilon(1e-8));

    const SystemSpec sym = ssc_to_symmetric(s);
    for (std::size_t k = 0; k < 2; ++k) {
      const auto ref = oracle::generalized_spectrum(gen.a0, gen.s[k]);
      const auto lib = ssc_jacobian_spectrum(s, k);
      const auto sym_ref = oracle::bisection_spectrum(sym.jacobian(k).dense());
      for (std::size_t i = 0; i < s.n; ++i) {
        CHECK(std::abs(lib[i] - ref[i]) <= 1e-9 * std::max(1.0, std::abs(ref[i])));
        CHECK(std::abs(sym_ref[i] - ref[i]) <= 1e-9 * std::max(1.0, std::abs(ref[i])));
      }
    }
    // e + e^T of the transformed relaxation block stays positive definite
    const Matrix eb = sym.b.block(p, p, r, r);
    const auto ev = oracle::bisection_spectrum(eb + eb.transpose());
    CHECK(ev.front() > 0.0);
    // the u-rows of B vanish
    CHECK(sym.b.block(0, 0, p, s.n).max_abs() <= 1e-14);

    // flipping alpha breaks (iii)
    SscSystem flipped = s;
    flipped.alpha = {-s.alpha[0], -s.alpha[1]};
    CHECK_FALSE(validate_ssc(flipped).drift_ok);
  }
}
