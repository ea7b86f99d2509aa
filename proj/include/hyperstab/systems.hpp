#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "hyperstab/smallmat.hpp"

namespace hyperstab {

/// Constant-coefficient symmetric hyperbolic system on a 2D domain:
///
///   w_t + A1 w_x + A2 w_y + B w = 0
///
/// A1, A2 symmetric; B arbitrary.
struct SystemSpec {
  std::size_t n = 0;
  SymMatrix a1;
  SymMatrix a2;
  Matrix b;
  std::vector<std::string> labels;

  const SymMatrix& jacobian(std::size_t k) const { return k == 0 ? a1 : a2; }
  SymMatrix b_sym() const { return SymMatrix::symmetric_part(b); }

  /// Throws InvalidInput on inconsistent dimensions or non-finite entries.
  void validate() const;
};

/// Linearized Saint-Venant equations around (H*, w*, v*) with drag k and
/// Coriolis l, in the variables (scaled height, x-velocity, y-velocity).
struct SaintVenantParams {
  double g = 9.81;
  double h_star = 2.0;
  double w_star = 2.0;
  double v_star = 0.0;
  double k_drag = 2.0;
  double l_coriolis = 1.0;
  double domain_l = 3.0;

  double celerity() const;  ///< sqrt(g H*)
  double gh() const { return g * h_star; }

  /// Throws InvalidParams naming the first violated bound.
  void validate() const;

  friend bool operator==(const SaintVenantParams&, const SaintVenantParams&) = default;
};

SystemSpec saint_venant(const SaintVenantParams& p);

/// The 3x3 system with diagonal Jacobians; row i of (A1 | A2) is the ray a_i.
struct DiagSystemSpec {
  std::array<std::array<double, 2>, 3> rays{};
  SymMatrix b;
  double c_l = 0.0;

  SystemSpec to_system() const;
};

DiagSystemSpec diagonal_example(double c_l);

/// Block system with U = (u, q), u in R^{n-r}, q in R^r,
/// Abar_k = [[a_k, b_k], [c_k, d_k]] and relaxation Bbar = diag(0, e).
/// The relaxation is taken as damping, U_t + sum_k Abar_k U_{x_k} + Bbar U = 0,
/// which is the orientation under which X2 e + e^T X2 > 0 is dissipative.
struct SscSystem {
  std::size_t n = 0;
  std::size_t r = 0;
  std::array<Matrix, 2> a;  ///< (n-r) x (n-r)
  std::array<Matrix, 2> b;  ///< (n-r) x r
  std::array<Matrix, 2> c;  ///< r x (n-r)
  std::array<Matrix, 2> d;  ///< r x r
  Matrix e;                 ///< r x r
  SymMatrix x1;             ///< (n-r) x (n-r), positive definite
  SymMatrix x2;             ///< r x r, positive definite
  std::array<double, 2> alpha{};

  std::size_t nu() const { return n - r; }

  /// Assembled n x n Jacobian Abar_k.
  Matrix jacobian(std::size_t k) const;
  /// diag(0, e)
  Matrix source() const;
  /// diag(X1, X2)
  SymMatrix symmetrizer() const;
  /// sum_k alpha_k a_k
  Matrix drift() const;

  /// Throws InvalidInput when block shapes disagree with (n, r).
  void check_dimensions() const;
};

struct ValidationReport {
  bool symmetrizer_ok = false;  ///< (i): A0 Abar_k symmetric
  bool dissipative_ok = false;  ///< (ii): X2 e + e^T X2 positive definite
  bool drift_ok = false;        ///< (iii): sum alpha_k a_k stable
  bool x_positive = false;      ///< X1, X2 positive definite
  bool e_invertible = false;

  double max_asymmetry = 0.0;   ///< worst |(A0 Abar_k) - (A0 Abar_k)^T|
  double dissipation_min = 0.0; ///< lambda_min(X2 e + e^T X2)
  /// Largest real part of the eigenvalues of sum alpha_k a_k. Closed form
  /// when n - r <= 3, otherwise lambda_max of the symmetrized image.
  double drift_max_real = 0.0;
  /// lambda_max of the symmetric part of X1^{1/2} (sum alpha_k a_k) X1^{-1/2}.
  /// Negative is sufficient for (iii); equal to drift_max_real when (i) holds.
  double drift_symmetrized_max = 0.0;
  double e_det = 0.0;

  bool all_ok() const {
    return symmetrizer_ok && dissipative_ok && drift_ok && x_positive && e_invertible;
  }
  std::vector<std::string> failures() const;
};

ValidationReport validate_ssc(const SscSystem& s);

/// Symmetrizes an SSC system with A0^{1/2}. The result has
/// A_k = A0^{-1/2} (A0 Abar_k) A0^{-1/2} and B = A0^{-1/2} (A0 Bbar) A0^{-1/2},
/// so the dissipative block of B is X2^{1/2} e X2^{-1/2}.
/// Throws NotSymmetrizable when (i) fails.
SystemSpec ssc_to_symmetric(const SscSystem& s);

/// Spectrum of the possibly non-symmetric Abar_k computed through the
/// symmetrizer, i.e. eigenvalues of A0^{1/2} Abar_k A0^{-1/2}.
std::vector<double> ssc_jacobian_spectrum(const SscSystem& s, std::size_t k);

}  // namespace hyperstab
