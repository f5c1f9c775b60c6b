#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sst/special.hpp"

namespace sst {

// A finite singular expansion sum c * (1-z)^a * L(z)^p with an
// O(|1-z|^A |log|^B) remainder, L(z) = ln(1/(1-z)).
struct SingularExpansion {
  struct Term {
    Cplx coeff;
    Real a;     // exponent of (1-z)
    int p = 0;  // power of L
  };
  std::vector<Term> terms;           // unique in (a,p); a ascending, p descending
  Real remainder_exponent{1e6};      // A
  int remainder_logpow = 0;          // B
  bool remainder_loglog = false;     // O(|log log|) marker from integration
  bool constant_unknown = false;     // integration absorbed an unknown constant

  void add_term(const Cplx& c, const Real& a, int p);
  void normalize();  // merge, drop zeros and terms with a >= A
  // evaluate the explicit part at real z in (0,1)
  Real eval_real(const Real& z) const;
};

SingularExpansion ex_add(const SingularExpansion& x, const SingularExpansion& y);
SingularExpansion ex_scale(const Cplx& c, const SingularExpansion& x);

// Window of exact Taylor coefficients with provenance.
struct SeriesWindow {
  std::vector<Real> coeffs;  // f_0..f_N, N >= 16
  std::string provenance;
};

SeriesWindow series_of_power(const Real& lambda, long N);  // (1-z)^{-lambda}
SeriesWindow series_of_log(long N);                        // L(z)
SeriesWindow series_of_polylog(const Real& alpha, int r, long N);
// Exact coefficients of the explicit part of an expansion (term-by-term
// rising-factorial formulas convolved with L-powers).
SeriesWindow series_of_expansion(const SingularExpansion& e, long N);

// Termwise (Hadamard) product.
SeriesWindow hadamard_series(const SeriesWindow& f, const SeriesWindow& g);

// Singular expansion of Li_{alpha,r} to the given depth in (1-z).
// alpha a positive integer supports r = 0 only (the residue form);
// Li_{1,0} returns the exact single term L.
SingularExpansion polylog_expansion(const Real& alpha, int r, int depth);

// Coefficient families of (1-z)^{-alpha} (.) (1-z)^{-beta} from the
// hypergeometric connection formula;
// requires alpha, beta, alpha+beta all non-integers.
struct HadamardPowerCoeffs {
  std::vector<Real> lambda;  // analytic family, term k: lambda_k (1-z)^k / k!
  std::vector<Real> mu;      // singular family: mu_k (1-z)^{-a-b+1+k} / k!
};
HadamardPowerCoeffs hadamard_power_coeffs(const Real& alpha, const Real& beta, int K);

SingularExpansion differentiate_expansion(const SingularExpansion& e, int k = 1);
SingularExpansion integrate_expansion(const SingularExpansion& e);

// Compare predicted coefficients of `e` against a window of exact
// coefficients; least-squares slope of log|error| vs log n must not exceed
// -(A+1) + 0.15 (plus the same margin again when the remainder carries a
// log factor).
struct DecayReport {
  Real slope{0};
  Real threshold{0};
  bool zero_error = false;
  bool pass = false;
  std::vector<std::pair<long, Real>> errors;
};
DecayReport verify_expansion(const SingularExpansion& e, const SeriesWindow& s,
                             const std::vector<long>& n_grid);

// Harmonic-square identity: H_n^2 = [z^n][(1-z)^{-1}L^2 + (1-z)^{-1} Li_{2,0}],
// checked in exact rational arithmetic for all n <= n_max.
bool harmonic_square_identity_exact(long n_max);

}  // namespace sst
