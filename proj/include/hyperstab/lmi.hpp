#pragma once

#include <array>

#include "hyperstab/smallmat.hpp"
#include "hyperstab/systems.hpp"

namespace hyperstab {

/// Affine Lyapunov potential mu(x) = m . x + c0 together with the decay rate
/// it is meant to certify and the scale chi on the coupling term.
struct PotentialSpec {
  std::array<double, 2> m{};
  double c0 = 0.0;
  double decay_c = 1.0;
  double chi = 1.0;

  void validate() const;

  friend bool operator==(const PotentialSpec&, const PotentialSpec&) = default;
};

struct LmiVerdict {
  bool feasible = false;
  double lambda_max = 0.0;
  double tolerance = 0.0;
  SymMatrix matrix;
};

/// C Id - 2 chi (B + B^T) + sum_k m_k A_k  (constant coefficients, so the
/// divergence of the Jacobians drops out). The coupling weight matches the
/// Saint-Venant matrix with diagonal C - 4 chi k + m w*, from which the
/// decay bound w* + 4Lk - sqrt(16 L^2 k^2 + g H*) follows.
SymMatrix assemble_lmi(const SystemSpec& sys, const PotentialSpec& p);

/// Feasible when lambda_max(assemble_lmi) <= tol, with tol from
/// default_tolerance() unless given.
LmiVerdict check_feasibility(const SystemSpec& sys, const PotentialSpec& p);
LmiVerdict check_feasibility(const SystemSpec& sys, const PotentialSpec& p, double tol);

struct ConstructedPotential {
  PotentialSpec potential;
  double k = 0.0;
  SystemSpec symmetric;
  LmiVerdict verdict;
};

/// Searches K over {2^j : j = -10..30} for the smallest K such that
/// m_k = alpha_k / K gives a feasible LMI at decay rate `c` on the
/// symmetrized system (chi = 1). Throws NoFeasibleK, or InvalidInput when
/// the system fails validate_ssc.
ConstructedPotential construct_potential_from_ssc(const SscSystem& s, double c);

/// w* + 4Lk - sqrt(16 L^2 k^2 + g H*): the largest decay rate admitted by the
/// Saint-Venant LMI with m = -1, chi = 2L. May be negative.
double sv_max_decay_rate(const SaintVenantParams& p);

/// Closed-form Saint-Venant feasibility: C + m w* < 0 and the 2x2 principal
/// minor nonnegative, i.e. chi >= ((C + m w*)^2 - m^2 g H*) / (4 k (C + m w*)).
bool sv_feasibility_conditions(const SaintVenantParams& p, double m, double chi, double c);

}  // namespace hyperstab
