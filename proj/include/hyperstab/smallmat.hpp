#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace hyperstab {

/// Dense row-major real matrix. Used for the non-symmetric blocks (coupling
/// matrices, SSC blocks); everything that must be symmetric goes through
/// SymMatrix instead.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> entries);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const double> data() const noexcept { return data_; }

  Matrix transpose() const;
  Matrix block(std::size_t row0, std::size_t col0, std::size_t rows, std::size_t cols) const;
  void set_block(std::size_t row0, std::size_t col0, const Matrix& b);

  /// Largest absolute entry.
  double max_abs() const noexcept;
  bool all_finite() const noexcept;

  Matrix& operator+=(const Matrix& rhs);
  Matrix& operator-=(const Matrix& rhs);
  Matrix& operator*=(double s);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator+(Matrix lhs, const Matrix& rhs);
Matrix operator-(Matrix lhs, const Matrix& rhs);
Matrix operator*(Matrix lhs, double s);
Matrix operator*(double s, Matrix rhs);
Matrix operator*(const Matrix& lhs, const Matrix& rhs);
std::vector<double> operator*(const Matrix& lhs, std::span<const double> x);

/// Largest |a_ij - a_ji|.
double asymmetry(const Matrix& m);

/// Determinant by LU with partial pivoting.
double determinant(const Matrix& m);

/// Eigenvalues of a general real matrix of size 1..3 from the closed-form
/// roots of its characteristic polynomial. Order is unspecified.
std::vector<std::complex<double>> eigenvalues_small(const Matrix& m);

/// Small dense symmetric matrix, 1 <= n <= 8. Symmetry is exact: every write
/// goes to both (i,j) and (j,i).
class SymMatrix {
 public:
  static constexpr std::size_t max_dim = 8;

  SymMatrix() = default;
  explicit SymMatrix(std::size_t n);
  /// Throws InvalidInput unless the rows are exactly symmetric.
  SymMatrix(std::initializer_list<std::initializer_list<double>> rows);

  static SymMatrix identity(std::size_t n);
  static SymMatrix diagonal(std::span<const double> entries);
  /// Accepts `m` if it is symmetric within `tol` (absolute) and stores the
  /// exact average (m + m^T)/2. Throws InvalidInput otherwise.
  static SymMatrix from_matrix(const Matrix& m, double tol = 0.0);
  /// (m + m^T)/2 without any check.
  static SymMatrix symmetric_part(const Matrix& m);

  std::size_t n() const noexcept { return m_.rows(); }
  double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  void set(std::size_t i, std::size_t j, double v);

  const Matrix& dense() const noexcept { return m_; }
  double max_abs() const noexcept { return m_.max_abs(); }

  SymMatrix& operator+=(const SymMatrix& rhs);
  SymMatrix& operator-=(const SymMatrix& rhs);
  SymMatrix& operator*=(double s);

  friend bool operator==(const SymMatrix&, const SymMatrix&) = default;

 private:
  Matrix m_;
};

SymMatrix operator+(SymMatrix lhs, const SymMatrix& rhs);
SymMatrix operator-(SymMatrix lhs, const SymMatrix& rhs);
SymMatrix operator*(SymMatrix lhs, double s);
SymMatrix operator*(double s, SymMatrix rhs);

/// Q^T M Q, symmetrized exactly.
SymMatrix congruence(const Matrix& q, const SymMatrix& m);

struct EigenDecomposition {
  std::vector<double> eigenvalues;  ///< ascending
  Matrix eigenvectors;              ///< column i pairs with eigenvalues[i]

  /// T diag(lambda) T^T
  SymMatrix reconstruct() const;
};

/// Cyclic Jacobi; sweeps until the off-diagonal Frobenius norm drops below
/// 1e-14 * max|m_ij| (at most 50 sweeps).
EigenDecomposition eigen_sym(const SymMatrix& m);

enum class DefinitenessClass {
  PositiveDefinite,
  PositiveSemi,
  Indefinite,
  NegativeSemi,
  NegativeDefinite,
};

const char* to_string(DefinitenessClass c);

struct Definiteness {
  DefinitenessClass classification;
  double lambda_min;
  double lambda_max;

  bool negative_semidefinite() const noexcept {
    return classification == DefinitenessClass::NegativeSemi ||
           classification == DefinitenessClass::NegativeDefinite;
  }
  bool positive_definite() const noexcept {
    return classification == DefinitenessClass::PositiveDefinite;
  }
};

/// 1e-9, scaled by max|m_ij| when that exceeds one.
double default_tolerance(const SymMatrix& m);

/// Definite classes win over semidefinite ones; a matrix with all
/// eigenvalues inside [-tol, tol] is reported NegativeSemi.
Definiteness classify_definiteness(const SymMatrix& m, double tol);
Definiteness classify_definiteness(const SymMatrix& m);

/// Principal square root of a positive definite matrix. Throws NotSPD.
SymMatrix sqrt_spd(const SymMatrix& m);
/// Inverse of the principal square root. Throws NotSPD.
SymMatrix inv_sqrt_spd(const SymMatrix& m);

}  // namespace hyperstab
