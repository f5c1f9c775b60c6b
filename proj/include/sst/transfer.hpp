#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sst/special.hpp"
#include "sst/toll.hpp"

namespace sst {

// a_n ~ sum coeff * n^power * (ln n)^logpow, terms in decreasing growth order.
struct AsymptoticPrediction {
  struct Term {
    Real coeff;
    Real power;
    int logpow = 0;
  };
  std::vector<Term> terms;
  std::string regime;  // "a" | "b" | "c" | "slowly-varying"
  std::vector<std::pair<std::string, Real>> constants;  // K1, K2, K3, K4, mu, ...
  Real k1_tail_bound{0};
  bool refined_remainder = false;  // o(sqrt n) refinement (m <= 26 only)

  Real eval(const Real& n) const {
    Real acc(0);
    for (const auto& t : terms) {
      Real v = t.coeff * pow(n, t.power);
      for (int i = 0; i < t.logpow; ++i) v *= log(n);
      acc += v;
    }
    return acc;
  }
};

// Toll classification for the ATT; explicit caller input (hypotheses such
// as conditional convergence are not machine-decidable from samples).
struct TollClass {
  enum class Kind {
    SummableSmall,       // (a): b_n = o(n), sum b_n/((n+1)(n+2)) converges
    LinearPlusSmall,     // (b): b_n = K2 (n+1) + h_n
    PowerLarge,          // (c): b_n = K4 n^v + o(n^v), v > 1
    PowerSlowlyVarying,  // b_n ~ n^beta L(n), L slowly varying, alpha < 1+beta
  };
  Kind kind = Kind::SummableSmall;
  Real K2{0};     // for (b)
  Real K4{1};     // for (c)
  Real v{2};      // for (c)
  Real beta{0};   // for the slowly-varying refinement
};

// Exact coefficient extraction from the exact transfer theorem via the
// per-root w_n recursion.  Agrees with rpm_mean to 1e-10 relative
// for n <= 500; that equality is the module's correctness gate.
std::vector<Real> ett_extract(const TollSpec& spec, long n_max);

// Largest imaginary residue seen when combining conjugate-root
// contributions in the last ett_extract call on this thread.
Real ett_last_imag_residual();

AsymptoticPrediction att_predict(const TollSpec& spec, const TollClass& cls,
                                 long k1_terms = 1000000);

// Diagnostic converse of the linear transfer: estimate K = lim a_n/n by Richardson
// extrapolation and return partial sums of b_n/((n+1)(n+2)) recovered from
// the inverse recurrence.
struct ConverseEstimate {
  Real K{0};
  std::vector<Real> partial_sums;
};

ConverseEstimate converse_estimate(int m, const std::vector<Real>& a);

// K1 = sum t_j/((j+1)(j+2)) for closed-form toll families, with tail bound.
SumResult k1_sum(const TollSpec& spec, long N = 1000000);

}  // namespace sst
