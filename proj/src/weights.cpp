#include "hyperstab/weights.hpp"

#include <cmath>

#include "hyperstab/error.hpp"

namespace hyperstab {

WeightFunction WeightFunction::exp_scalar(std::array<double, 2> m, double c0) {
  WeightFunction w;
  w.kind_ = WeightKind::ExpScalar;
  w.grad_ = m;
  w.offset_ = c0;
  return w;
}

WeightFunction WeightFunction::exp_per_component(std::vector<AffineExponent> mu) {
  if (mu.empty()) throw Error(ErrorKind::InvalidInput, "no exponents given");
  WeightFunction w;
  w.kind_ = WeightKind::ExpPerComponent;
  w.mu_ = std::move(mu);
  return w;
}

WeightFunction WeightFunction::linear(double k, std::array<double, 2> alpha) {
  if (!(k > 0.0)) throw Error(ErrorKind::InvalidParams, "linear weight needs K > 0");
  WeightFunction w;
  w.kind_ = WeightKind::Linear;
  w.grad_ = alpha;
  w.offset_ = k;
  return w;
}

WeightFunction WeightFunction::fixed_matrix(std::vector<double> diagonal) {
  if (diagonal.empty()) throw Error(ErrorKind::InvalidInput, "empty weight matrix");
  for (double d : diagonal) {
    if (!(d > 0.0)) throw Error(ErrorKind::InvalidParams, "weight matrix must be positive");
  }
  WeightFunction w;
  w.kind_ = WeightKind::FixedMatrix;
  w.diag_ = std::move(diagonal);
  return w;
}

double WeightFunction::operator()(std::size_t k, double x, double y) const {
  switch (kind_) {
    case WeightKind::ExpScalar:
      return std::exp(grad_[0] * x + grad_[1] * y + offset_);
    case WeightKind::Linear:
      return offset_ + grad_[0] * x + grad_[1] * y;
    case WeightKind::ExpPerComponent:
      return std::exp(mu_.at(k)(x, y));
    case WeightKind::FixedMatrix:
      return diag_.at(k);
  }
  return 0.0;
}

double WeightFunction::operator()(double x, double y) const {
  if (!scalar()) throw Error(ErrorKind::InvalidInput, "weight is not scalar");
  return (*this)(0, x, y);
}

bool WeightFunction::positive_on(const Rect& r) const {
  if (kind_ != WeightKind::Linear) return true;
  for (double x : {r.x0, r.x0 + r.width})
    for (double y : {r.y0, r.y0 + r.height})
      if (!((*this)(0, x, y) > 0.0)) return false;
  return true;
}

WeightFunction sv_weights(const SaintVenantParams& p, WeightStyle style) {
  const double two_l = 2.0 * p.domain_l;
  if (style == WeightStyle::Exponential) {
    return WeightFunction::exp_scalar({-1.0 / two_l, 0.0}, std::log(two_l));
  }
  return WeightFunction::linear(two_l, {-1.0, 0.0});
}

WeightFunction diag_weights(double c_l) {
  if (!(c_l > 0.0)) throw Error(ErrorKind::InvalidParams, "c_l must be positive");
  return WeightFunction::exp_per_component({
      {-(c_l + 3.0), 1.0, 0.0},
      {-(c_l + 1.0), 1.0, 0.0},
      {c_l + 1.0, 1.0, 0.0},
  });
}

WeightFunction dia_weight(const SaintVenantParams& p) {
  const double s = p.h_star / p.g;
  return WeightFunction::fixed_matrix({1.0, s, s});
}

}  // namespace hyperstab
