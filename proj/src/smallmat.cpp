#include "hyperstab/smallmat.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "hyperstab/error.hpp"

namespace hyperstab {

namespace {

void require_same_shape(const Matrix& a, const Matrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::InvalidInput, std::string("shape mismatch in ") + op);
  }
}

void require_dim(std::size_t n) {
  if (n == 0 || n > SymMatrix::max_dim) {
    throw Error(ErrorKind::InvalidInput,
                "symmetric matrix dimension " + std::to_string(n) + " outside [1, 8]");
  }
}

}  // namespace

// ---------------------------------------------------------------- Matrix

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorKind::InvalidInput, "ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> entries) {
  Matrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::block(std::size_t row0, std::size_t col0, std::size_t rows,
                     std::size_t cols) const {
  if (row0 + rows > rows_ || col0 + cols > cols_) {
    throw Error(ErrorKind::InvalidInput, "block out of range");
  }
  Matrix b(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) b(i, j) = (*this)(row0 + i, col0 + j);
  return b;
}

void Matrix::set_block(std::size_t row0, std::size_t col0, const Matrix& b) {
  if (row0 + b.rows() > rows_ || col0 + b.cols() > cols_) {
    throw Error(ErrorKind::InvalidInput, "block out of range");
  }
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) (*this)(row0 + i, col0 + j) = b(i, j);
}

double Matrix::max_abs() const noexcept {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

bool Matrix::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
  require_same_shape(*this, rhs, "+");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
  require_same_shape(*this, rhs, "-");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
  return *this;
}

Matrix& Matrix::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

Matrix operator+(Matrix lhs, const Matrix& rhs) { return lhs += rhs; }
Matrix operator-(Matrix lhs, const Matrix& rhs) { return lhs -= rhs; }
Matrix operator*(Matrix lhs, double s) { return lhs *= s; }
Matrix operator*(double s, Matrix rhs) { return rhs *= s; }

Matrix operator*(const Matrix& lhs, const Matrix& rhs) {
  if (lhs.cols() != rhs.rows()) throw Error(ErrorKind::InvalidInput, "shape mismatch in *");
  Matrix out(lhs.rows(), rhs.cols());
  for (std::size_t i = 0; i < lhs.rows(); ++i)
    for (std::size_t k = 0; k < lhs.cols(); ++k) {
      const double a = lhs(i, k);
      if (a == 0.0) continue;
      for (std::size_t j = 0; j < rhs.cols(); ++j) out(i, j) += a * rhs(k, j);
    }
  return out;
}

std::vector<double> operator*(const Matrix& lhs, std::span<const double> x) {
  if (lhs.cols() != x.size()) throw Error(ErrorKind::InvalidInput, "shape mismatch in M*x");
  std::vector<double> y(lhs.rows(), 0.0);
  for (std::size_t i = 0; i < lhs.rows(); ++i)
    for (std::size_t j = 0; j < lhs.cols(); ++j) y[i] += lhs(i, j) * x[j];
  return y;
}

double asymmetry(const Matrix& m) {
  if (!m.square()) throw Error(ErrorKind::InvalidInput, "asymmetry of non-square matrix");
  double worst = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j)
      worst = std::max(worst, std::abs(m(i, j) - m(j, i)));
  return worst;
}

double determinant(const Matrix& m) {
  if (!m.square()) throw Error(ErrorKind::InvalidInput, "determinant of non-square matrix");
  Matrix a = m;
  const std::size_t n = a.rows();
  double det = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a(r, c)) > std::abs(a(piv, c))) piv = r;
    if (a(piv, c) == 0.0) return 0.0;
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(c, j), a(piv, j));
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = a(r, c) / a(c, c);
      for (std::size_t j = c; j < n; ++j) a(r, j) -= f * a(c, j);
    }
  }
  return det;
}

std::vector<std::complex<double>> eigenvalues_small(const Matrix& m) {
  using cd = std::complex<double>;
  if (!m.square() || m.rows() == 0 || m.rows() > 3) {
    throw Error(ErrorKind::InvalidInput, "eigenvalues_small needs a 1x1, 2x2 or 3x3 matrix");
  }
  if (!m.all_finite()) throw Error(ErrorKind::InvalidInput, "non-finite matrix entry");
  const std::size_t n = m.rows();
  if (n == 1) return {cd(m(0, 0), 0.0)};
  if (n == 2) {
    const double tr = m(0, 0) + m(1, 1);
    const double det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    const double disc = 0.25 * tr * tr - det;
    if (disc >= 0.0) {
      const double s = std::sqrt(disc);
      return {cd(0.5 * tr - s, 0.0), cd(0.5 * tr + s, 0.0)};
    }
    const double s = std::sqrt(-disc);
    return {cd(0.5 * tr, -s), cd(0.5 * tr, s)};
  }

  // lambda^3 + a lambda^2 + b lambda + c
  const double a = -(m(0, 0) + m(1, 1) + m(2, 2));
  const double b = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0) + m(0, 0) * m(2, 2) -
                   m(0, 2) * m(2, 0) + m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
  const double c = -determinant(m);

  const double shift = -a / 3.0;
  const double p = b - a * a / 3.0;
  const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
  const double disc = 0.25 * q * q + p * p * p / 27.0;

  if (disc > 0.0) {
    const double sd = std::sqrt(disc);
    const double u = std::cbrt(-0.5 * q + sd);
    const double v = std::cbrt(-0.5 * q - sd);
    const double re = -0.5 * (u + v) + shift;
    const double im = 0.5 * std::sqrt(3.0) * (u - v);
    return {cd(u + v + shift, 0.0), cd(re, -std::abs(im)), cd(re, std::abs(im))};
  }
  if (p == 0.0) return {cd(shift, 0.0), cd(shift, 0.0), cd(shift, 0.0)};
  const double r = 2.0 * std::sqrt(-p / 3.0);
  const double arg = std::clamp(3.0 * q / (p * r), -1.0, 1.0);
  const double phi = std::acos(arg) / 3.0;
  std::vector<cd> out;
  for (int k = 0; k < 3; ++k) {
    out.emplace_back(r * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0) + shift, 0.0);
  }
  return out;
}

// ---------------------------------------------------------------- SymMatrix

SymMatrix::SymMatrix(std::size_t n) : m_(n, n) { require_dim(n); }

SymMatrix::SymMatrix(std::initializer_list<std::initializer_list<double>> rows) : m_(rows) {
  require_dim(m_.rows());
  if (!m_.square()) throw Error(ErrorKind::InvalidInput, "symmetric matrix literal not square");
  if (asymmetry(m_) != 0.0) throw Error(ErrorKind::InvalidInput, "matrix literal not symmetric");
}

SymMatrix SymMatrix::identity(std::size_t n) {
  SymMatrix s(n);
  for (std::size_t i = 0; i < n; ++i) s.set(i, i, 1.0);
  return s;
}

SymMatrix SymMatrix::diagonal(std::span<const double> entries) {
  SymMatrix s(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) s.set(i, i, entries[i]);
  return s;
}

SymMatrix SymMatrix::from_matrix(const Matrix& m, double tol) {
  if (!m.square()) throw Error(ErrorKind::InvalidInput, "matrix not square");
  const double asym = asymmetry(m);
  if (!(asym <= tol)) {
    throw Error(ErrorKind::InvalidInput,
                "matrix not symmetric (max |a_ij - a_ji| = " + std::to_string(asym) + ")");
  }
  return symmetric_part(m);
}

SymMatrix SymMatrix::symmetric_part(const Matrix& m) {
  if (!m.square()) throw Error(ErrorKind::InvalidInput, "matrix not square");
  SymMatrix s(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    s.m_(i, i) = m(i, i);
    for (std::size_t j = i + 1; j < m.cols(); ++j) s.set(i, j, 0.5 * (m(i, j) + m(j, i)));
  }
  return s;
}

void SymMatrix::set(std::size_t i, std::size_t j, double v) {
  m_(i, j) = v;
  m_(j, i) = v;
}

SymMatrix& SymMatrix::operator+=(const SymMatrix& rhs) {
  m_ += rhs.m_;
  return *this;
}

SymMatrix& SymMatrix::operator-=(const SymMatrix& rhs) {
  m_ -= rhs.m_;
  return *this;
}

SymMatrix& SymMatrix::operator*=(double s) {
  m_ *= s;
  return *this;
}

SymMatrix operator+(SymMatrix lhs, const SymMatrix& rhs) { return lhs += rhs; }
SymMatrix operator-(SymMatrix lhs, const SymMatrix& rhs) { return lhs -= rhs; }
SymMatrix operator*(SymMatrix lhs, double s) { return lhs *= s; }
SymMatrix operator*(double s, SymMatrix rhs) { return rhs *= s; }

SymMatrix congruence(const Matrix& q, const SymMatrix& m) {
  return SymMatrix::symmetric_part(q.transpose() * m.dense() * q);
}

// ---------------------------------------------------------------- eigen

SymMatrix EigenDecomposition::reconstruct() const {
  const std::size_t n = eigenvalues.size();
  Matrix scaled = eigenvectors;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) scaled(i, j) *= eigenvalues[j];
  return SymMatrix::symmetric_part(scaled * eigenvectors.transpose());
}

EigenDecomposition eigen_sym(const SymMatrix& m) {
  if (!m.dense().all_finite()) throw Error(ErrorKind::InvalidInput, "non-finite matrix entry");
  const std::size_t n = m.n();
  Matrix a = m.dense();
  Matrix v = Matrix::identity(n);

  const double threshold = 1e-14 * m.max_abs();
  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * a(i, j) * a(i, j);
    return std::sqrt(s);
  };

  for (int sweep = 0; sweep < 50 && off_norm() > threshold; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // Symmetric Schur decomposition of the (p,q) 2x2 block.
        const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });

  EigenDecomposition out{std::vector<double>(n), Matrix(n, n)};
  for (std::size_t c = 0; c < n; ++c) {
    out.eigenvalues[c] = a(order[c], order[c]);
    for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, c) = v(r, order[c]);
  }
  return out;
}

// ---------------------------------------------------------------- definiteness

const char* to_string(DefinitenessClass c) {
  switch (c) {
    case DefinitenessClass::PositiveDefinite: return "PositiveDefinite";
    case DefinitenessClass::PositiveSemi: return "PositiveSemi";
    case DefinitenessClass::Indefinite: return "Indefinite";
    case DefinitenessClass::NegativeSemi: return "NegativeSemi";
    case DefinitenessClass::NegativeDefinite: return "NegativeDefinite";
  }
  return "Unknown";
}

double default_tolerance(const SymMatrix& m) { return 1e-9 * std::max(1.0, m.max_abs()); }

Definiteness classify_definiteness(const SymMatrix& m, double tol) {
  const auto eig = eigen_sym(m);
  const double lo = eig.eigenvalues.front();
  const double hi = eig.eigenvalues.back();
  DefinitenessClass c = DefinitenessClass::Indefinite;
  if (hi < -tol) {
    c = DefinitenessClass::NegativeDefinite;
  } else if (lo > tol) {
    c = DefinitenessClass::PositiveDefinite;
  } else if (hi <= tol) {
    c = DefinitenessClass::NegativeSemi;
  } else if (lo >= -tol) {
    c = DefinitenessClass::PositiveSemi;
  }
  return {c, lo, hi};
}

Definiteness classify_definiteness(const SymMatrix& m) {
  return classify_definiteness(m, default_tolerance(m));
}

namespace {

SymMatrix spectral_map(const SymMatrix& m, double (*f)(double)) {
  const auto eig = eigen_sym(m);
  const double tol = default_tolerance(m);
  if (!(eig.eigenvalues.front() > tol)) {
    throw Error(ErrorKind::NotSPD, "matrix not positive definite (lambda_min = " +
                                       std::to_string(eig.eigenvalues.front()) + ")");
  }
  EigenDecomposition mapped = eig;
  for (double& l : mapped.eigenvalues) l = f(l);
  return mapped.reconstruct();
}

}  // namespace

SymMatrix sqrt_spd(const SymMatrix& m) {
  return spectral_map(m, [](double l) { return std::sqrt(l); });
}

SymMatrix inv_sqrt_spd(const SymMatrix& m) {
  return spectral_map(m, [](double l) { return 1.0 / std::sqrt(l); });
}

}  // namespace hyperstab
