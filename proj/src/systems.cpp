#include "hyperstab/systems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hyperstab/error.hpp"

namespace hyperstab {

namespace {

void require_shape(const Matrix& m, std::size_t rows, std::size_t cols, const char* name) {
  if (m.rows() != rows || m.cols() != cols) {
    throw Error(ErrorKind::InvalidInput, std::string(name) + " has shape " +
                                             std::to_string(m.rows()) + "x" +
                                             std::to_string(m.cols()) + ", expected " +
                                             std::to_string(rows) + "x" + std::to_string(cols));
  }
}

Matrix block_diag(const Matrix& top, const Matrix& bottom) {
  Matrix out(top.rows() + bottom.rows(), top.cols() + bottom.cols());
  out.set_block(0, 0, top);
  out.set_block(top.rows(), top.cols(), bottom);
  return out;
}

SymMatrix block_diag(const SymMatrix& top, const SymMatrix& bottom) {
  return SymMatrix::symmetric_part(block_diag(top.dense(), bottom.dense()));
}

}  // namespace

void SystemSpec::validate() const {
  if (n == 0 || a1.n() != n || a2.n() != n || b.rows() != n || b.cols() != n) {
    throw Error(ErrorKind::InvalidInput, "system matrices do not match dimension n");
  }
  if (!labels.empty() && labels.size() != n) {
    throw Error(ErrorKind::InvalidInput, "label count does not match dimension n");
  }
  if (!a1.dense().all_finite() || !a2.dense().all_finite() || !b.all_finite()) {
    throw Error(ErrorKind::InvalidInput, "non-finite system matrix entry");
  }
}

// ---------------------------------------------------------------- Saint-Venant

double SaintVenantParams::celerity() const { return std::sqrt(g * h_star); }

void SaintVenantParams::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorKind::InvalidParams, what); };
  if (!(g > 0.0)) fail("g must be positive");
  if (!(h_star > 0.0)) fail("h_star must be positive");
  if (!(w_star > 0.0)) fail("w_star must be positive");
  if (!(w_star < celerity())) fail("w_star must be below sqrt(g*h_star) (subcritical flow)");
  if (v_star != 0.0) fail("v_star must be zero");
  if (!(k_drag > 0.0)) fail("k_drag must be positive");
  if (!(l_coriolis > 0.0)) fail("l_coriolis must be positive");
  if (!(domain_l > 0.0)) fail("domain_l must be positive");
}

SystemSpec saint_venant(const SaintVenantParams& p) {
  p.validate();
  const double c = p.celerity();
  const double w = p.w_star;
  const double v = p.v_star;
  SystemSpec s;
  s.n = 3;
  s.a1 = SymMatrix{{w, c, 0.0}, {c, w, 0.0}, {0.0, 0.0, w}};
  s.a2 = SymMatrix{{v, 0.0, c}, {0.0, v, 0.0}, {c, 0.0, v}};
  s.b = Matrix{{0.0, 0.0, 0.0}, {0.0, p.k_drag, -p.l_coriolis}, {0.0, p.l_coriolis, p.k_drag}};
  s.labels = {"h", "w", "v"};
  return s;
}

// ---------------------------------------------------------------- diagonal

SystemSpec DiagSystemSpec::to_system() const {
  SystemSpec s;
  s.n = 3;
  s.a1 = SymMatrix(3);
  s.a2 = SymMatrix(3);
  for (std::size_t i = 0; i < 3; ++i) {
    s.a1.set(i, i, rays[i][0]);
    s.a2.set(i, i, rays[i][1]);
  }
  s.b = b.dense();
  s.labels = {"w1", "w2", "w3"};
  return s;
}

DiagSystemSpec diagonal_example(double c_l) {
  if (!(c_l > 0.0)) throw Error(ErrorKind::InvalidParams, "c_l must be positive");
  DiagSystemSpec d;
  d.rays = {{{1.0, 1.0}, {1.0, -1.0}, {-1.0, -1.0}}};
  d.b = SymMatrix{{-1.0, 0.0, 0.0}, {0.0, 2.0, -1.0}, {0.0, -1.0, 1.0}};
  d.c_l = c_l;
  return d;
}

// ---------------------------------------------------------------- SSC

void SscSystem::check_dimensions() const {
  if (r == 0 || r >= n) throw Error(ErrorKind::InvalidInput, "need 0 < r < n");
  const std::size_t m = n - r;
  for (std::size_t k = 0; k < 2; ++k) {
    require_shape(a[k], m, m, "a_k");
    require_shape(b[k], m, r, "b_k");
    require_shape(c[k], r, m, "c_k");
    require_shape(d[k], r, r, "d_k");
  }
  require_shape(e, r, r, "e");
  if (x1.n() != m) throw Error(ErrorKind::InvalidInput, "X1 must be (n-r)x(n-r)");
  if (x2.n() != r) throw Error(ErrorKind::InvalidInput, "X2 must be r x r");
}

Matrix SscSystem::jacobian(std::size_t k) const {
  Matrix j(n, n);
  j.set_block(0, 0, a[k]);
  j.set_block(0, nu(), b[k]);
  j.set_block(nu(), 0, c[k]);
  j.set_block(nu(), nu(), d[k]);
  return j;
}

Matrix SscSystem::source() const { return block_diag(Matrix(nu(), nu()), e); }

SymMatrix SscSystem::symmetrizer() const { return block_diag(x1, x2); }

Matrix SscSystem::drift() const { return alpha[0] * a[0] + alpha[1] * a[1]; }

std::vector<std::string> ValidationReport::failures() const {
  std::vector<std::string> out;
  if (!x_positive) out.emplace_back("X1 and X2 must be positive definite");
  if (!e_invertible) out.emplace_back("e is singular (det = " + std::to_string(e_det) + ")");
  if (!symmetrizer_ok) {
    out.emplace_back("(i) A0*Abar_k not symmetric (max asymmetry " +
                     std::to_string(max_asymmetry) + ")");
  }
  if (!dissipative_ok) {
    out.emplace_back("(ii) X2*e + e^T*X2 not positive definite (lambda_min " +
                     std::to_string(dissipation_min) + ")");
  }
  if (!drift_ok) {
    out.emplace_back("(iii) sum alpha_k a_k not stable (max real part " +
                     std::to_string(drift_max_real) + ")");
  }
  return out;
}

ValidationReport validate_ssc(const SscSystem& s) {
  s.check_dimensions();
  ValidationReport rep;

  rep.x_positive = classify_definiteness(s.x1).positive_definite() &&
                   classify_definiteness(s.x2).positive_definite();

  const double e_scale = std::max(s.e.max_abs(), 1e-300);
  rep.e_det = determinant(s.e);
  rep.e_invertible =
      std::abs(rep.e_det) > 1e-12 * std::pow(e_scale, static_cast<double>(s.r));

  const SymMatrix a0 = s.symmetrizer();
  rep.symmetrizer_ok = true;
  for (std::size_t k = 0; k < 2; ++k) {
    const Matrix prod = a0.dense() * s.jacobian(k);
    const double asym = asymmetry(prod);
    rep.max_asymmetry = std::max(rep.max_asymmetry, asym);
    if (asym > 1e-10 * std::max(1.0, prod.max_abs())) rep.symmetrizer_ok = false;
  }

  const Matrix x2e = s.x2.dense() * s.e;
  const SymMatrix diss = SymMatrix::symmetric_part(x2e + x2e.transpose());
  const auto diss_def = classify_definiteness(diss);
  rep.dissipation_min = diss_def.lambda_min;
  rep.dissipative_ok = diss_def.positive_definite();

  const Matrix drift = s.drift();
  if (rep.x_positive) {
    const Matrix image = sqrt_spd(s.x1).dense() * drift * inv_sqrt_spd(s.x1).dense();
    rep.drift_symmetrized_max = eigen_sym(SymMatrix::symmetric_part(image)).eigenvalues.back();
  } else {
    rep.drift_symmetrized_max = std::numeric_limits<double>::infinity();
  }
  if (s.nu() <= 3) {
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& z : eigenvalues_small(drift)) worst = std::max(worst, z.real());
    rep.drift_max_real = worst;
  } else {
    rep.drift_max_real = rep.drift_symmetrized_max;
  }
  const double drift_tol = 1e-9 * std::max(1.0, drift.max_abs());
  rep.drift_ok = rep.drift_max_real < -drift_tol;
  return rep;
}

SystemSpec ssc_to_symmetric(const SscSystem& s) {
  s.check_dimensions();
  const SymMatrix a0 = s.symmetrizer();
  const Matrix a0_inv_half = inv_sqrt_spd(a0).dense();

  SystemSpec out;
  out.n = s.n;
  std::array<SymMatrix, 2> jac;
  for (std::size_t k = 0; k < 2; ++k) {
    const Matrix sym = a0.dense() * s.jacobian(k);
    const double scale = std::max(1.0, sym.max_abs());
    if (asymmetry(sym) > 1e-10 * scale) {
      throw Error(ErrorKind::NotSymmetrizable,
                  "A0*Abar_" + std::to_string(k + 1) + " is not symmetric");
    }
    const Matrix ak = a0_inv_half * sym * a0_inv_half;
    if (asymmetry(ak) > 1e-10 * scale) {
      throw Error(ErrorKind::NotSymmetrizable,
                  "transformed A_" + std::to_string(k + 1) + " is not symmetric");
    }
    jac[k] = SymMatrix::symmetric_part(ak);
  }
  out.a1 = jac[0];
  out.a2 = jac[1];
  out.b = a0_inv_half * (a0.dense() * s.source()) * a0_inv_half;
  for (std::size_t i = 0; i < s.n; ++i) {
    out.labels.push_back(i < s.nu() ? "u" + std::to_string(i + 1)
                                    : "q" + std::to_string(i - s.nu() + 1));
  }
  return out;
}

std::vector<double> ssc_jacobian_spectrum(const SscSystem& s, std::size_t k) {
  s.check_dimensions();
  const SymMatrix a0 = s.symmetrizer();
  const Matrix image = sqrt_spd(a0).dense() * s.jacobian(k) * inv_sqrt_spd(a0).dense();
  return eigen_sym(SymMatrix::symmetric_part(image)).eigenvalues;
}

}  // namespace hyperstab
