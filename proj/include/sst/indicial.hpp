#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sst/real.hpp"

namespace sst {

// Roots of the indicial polynomial psi_m(lambda) = rising(lambda, m-1) - m!,
// sorted by nonincreasing real part (ties: nonincreasing imaginary part).
// lambda_1 = 2 always; -m is a root iff m is odd.
struct IndicialData {
  int m = 2;
  std::vector<Cplx> roots;       // size m-1
  std::vector<Cplx> psi_prime;   // psi'(lambda_j) by the product over other roots
  std::optional<Real> alpha;     // Re lambda_2; undefined for m = 2
  Real max_residual{0};          // max |psi(lambda_j)|
  std::vector<std::string> warnings;  // near-ties in real parts
};

Cplx psi_eval(int m, const Cplx& lambda);

// Root table, memoized by m.  2 <= m <= 64.
const IndicialData& psi_roots(int m);

// Re(lambda_2); throws for m = 2 where it is undefined.
Real alpha_of(int m);

// Transfer coefficients c_j from the initial values b_0..b_{m-2}.
std::vector<Cplx> ett_coefficients(int m, const std::vector<Real>& initial);

// Residual report for the indicial-polynomial identities evaluated at the computed
// roots.  `perturb_psi_prime` injects a relative fault for harness tests.
struct IdentityResiduals {
  Real partial_fraction{0};      // sum 1/((probe-root) psi') vs 1/psi(probe)
  Real shifted_inverse_square{0};  // max over integer shifts r in {-1, ..., m+3}
  Real root_power_sums{0};       // sum root^k/psi' vanishing, k <= m-3
  Real deflated_at_two{0};       // sum over j >= 2 of 1/((root-2) psi')
  std::optional<Real> odd_first_order;   // odd m: sum 1/((root+m) psi')
  std::optional<Real> odd_second_order;  // odd m: sum 1/((root+m)^2 psi')
  Real psi_prime_two_rel{0};     // relative deviation of psi'(2) from m!(H_m - 1)
  Real max_abs{0};
};

IdentityResiduals identity_residuals(int m, const Cplx& lambda_probe,
                                     const Real& perturb_psi_prime = Real(0));

}  // namespace sst
