#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "hyperstab/systems.hpp"

namespace hyperstab {

/// Axis-aligned rectangle [x0, x0 + width] x [y0, y0 + height].
struct Rect {
  double x0 = 0.0;
  double y0 = 0.0;
  double width = 1.0;
  double height = 1.0;
};

enum class WeightKind {
  ExpScalar,        ///< exp(m . x + c0), same for all components
  ExpPerComponent,  ///< exp(mu_i(x)), mu_i affine per component
  Linear,           ///< K + alpha . x, same for all components
  FixedMatrix,      ///< constant diagonal matrix
};

/// Affine exponent p x + q y + r.
struct AffineExponent {
  double px = 0.0;
  double py = 0.0;
  double offset = 0.0;

  double operator()(double x, double y) const { return px * x + py * y + offset; }
};

/// Lyapunov weight. Evaluates to the weight of component `k` at (x, y); for
/// the scalar kinds the component index is ignored.
class WeightFunction {
 public:
  static WeightFunction exp_scalar(std::array<double, 2> m, double c0);
  static WeightFunction exp_per_component(std::vector<AffineExponent> mu);
  static WeightFunction linear(double k, std::array<double, 2> alpha);
  static WeightFunction fixed_matrix(std::vector<double> diagonal);

  WeightKind kind() const noexcept { return kind_; }
  bool scalar() const noexcept {
    return kind_ == WeightKind::ExpScalar || kind_ == WeightKind::Linear;
  }

  double operator()(std::size_t k, double x, double y) const;
  /// Scalar kinds only.
  double operator()(double x, double y) const;

  /// For Linear: positive at all four corners (affine, hence everywhere).
  bool positive_on(const Rect& r) const;

  // Parameters, meaningful for the matching kind.
  const std::array<double, 2>& gradient() const noexcept { return grad_; }
  double offset() const noexcept { return offset_; }
  const std::vector<AffineExponent>& exponents() const noexcept { return mu_; }
  const std::vector<double>& diagonal() const noexcept { return diag_; }

 private:
  WeightKind kind_ = WeightKind::ExpScalar;
  std::array<double, 2> grad_{};
  double offset_ = 0.0;
  std::vector<AffineExponent> mu_;
  std::vector<double> diag_;
};

enum class WeightStyle { Exponential, Linear };

/// 2L exp(-x / 2L) or 2L - x.
WeightFunction sv_weights(const SaintVenantParams& p, WeightStyle style);

/// mu_1 = y - (C_L+3) x, mu_2 = y - (C_L+1) x, mu_3 = y + (C_L+1) x.
WeightFunction diag_weights(double c_l);

/// Constant weight diag(1, H*/g, H*/g).
WeightFunction dia_weight(const SaintVenantParams& p);

}  // namespace hyperstab
