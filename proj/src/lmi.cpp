#include "hyperstab/lmi.hpp"

#include <cmath>
#include <string>

#include "hyperstab/error.hpp"

namespace hyperstab {

void PotentialSpec::validate() const {
  if (!(decay_c > 0.0)) throw Error(ErrorKind::InvalidParams, "decay rate C must be positive");
  if (!(chi >= 0.0)) throw Error(ErrorKind::InvalidParams, "chi must be nonnegative");
  if (!std::isfinite(m[0]) || !std::isfinite(m[1]) || !std::isfinite(c0)) {
    throw Error(ErrorKind::InvalidParams, "non-finite potential coefficient");
  }
}

SymMatrix assemble_lmi(const SystemSpec& sys, const PotentialSpec& p) {
  sys.validate();
  SymMatrix out = SymMatrix::identity(sys.n) * p.decay_c;
  out -= sys.b_sym() * (4.0 * p.chi);
  out += sys.a1 * p.m[0];
  out += sys.a2 * p.m[1];
  return out;
}

LmiVerdict check_feasibility(const SystemSpec& sys, const PotentialSpec& p, double tol) {
  LmiVerdict v;
  v.matrix = assemble_lmi(sys, p);
  v.tolerance = tol;
  v.lambda_max = eigen_sym(v.matrix).eigenvalues.back();
  v.feasible = v.lambda_max <= tol;
  return v;
}

LmiVerdict check_feasibility(const SystemSpec& sys, const PotentialSpec& p) {
  return check_feasibility(sys, p, default_tolerance(assemble_lmi(sys, p)));
}

ConstructedPotential construct_potential_from_ssc(const SscSystem& s, double c) {
  if (!(c > 0.0)) throw Error(ErrorKind::InvalidParams, "decay rate must be positive");
  const auto report = validate_ssc(s);
  if (!report.all_ok()) {
    std::string msg = "SSC validation failed:";
    for (const auto& f : report.failures()) msg += " " + f + ";";
    throw Error(ErrorKind::InvalidInput, msg);
  }

  ConstructedPotential out;
  out.symmetric = ssc_to_symmetric(s);
  for (int j = -10; j <= 30; ++j) {
    const double k = std::ldexp(1.0, j);
    PotentialSpec p;
    p.m = {s.alpha[0] / k, s.alpha[1] / k};
    p.decay_c = c;
    p.chi = 1.0;
    auto verdict = check_feasibility(out.symmetric, p);
    if (verdict.feasible) {
      out.potential = p;
      out.k = k;
      out.verdict = std::move(verdict);
      return out;
    }
  }
  throw Error(ErrorKind::NoFeasibleK,
              "no K in [2^-10, 2^30] makes the LMI feasible at C = " + std::to_string(c));
}

double sv_max_decay_rate(const SaintVenantParams& p) {
  const double lk = p.domain_l * p.k_drag;
  return p.w_star + 4.0 * lk - std::sqrt(16.0 * lk * lk + p.gh());
}

bool sv_feasibility_conditions(const SaintVenantParams& p, double m, double chi, double c) {
  const double lead = c + m * p.w_star;
  if (!(lead < 0.0)) return false;
  const double bound = (lead * lead - m * m * p.gh()) / (4.0 * p.k_drag * lead);
  return chi >= bound;
}

}  // namespace hyperstab
