#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sst/exact_engine.hpp"
#include "sst/special.hpp"
#include "sst/toll.hpp"

namespace sst {

// A k-indexed moment (or moment-defining) sequence with provenance.
struct LimitMomentSeq {
  std::string kind;  // "ck" | "gk" | "mk" | "shape_ck0" | "clt"
  std::vector<std::pair<std::string, Real>> params;
  std::vector<Real> values;       // primary sequence (C_k, g_k, m_k, C_{2k,0})
  std::vector<Real> moments;      // E Y^k where applicable
  Real quadrature_tol{0};         // achieved quadrature error estimate
};

struct CltConstants {
  int m = 2;
  Real mu{0};
  Real sigma2{0};
  Real tail_bound{0};
  long r_truncation = 0;
};

// Small-toll CLT constants under the RPM model (m <= 26).
CltConstants rpm_clt_constants(const TollSpec& spec, long N = 5000);

// The borderline-small (sqrt-n toll) variance constant.
Real borderline_sigma2(int m);

// Moments g_k of the fixed point Y_beta; beta > 1/2, beta != 1.
LimitMomentSeq y_beta_moments(int m, const Real& beta, int k_max);

// Recursive sampler for Y_beta, truncated at `depth` with leaves at g_1;
// branches of relative weight below `weight_floor` are likewise replaced by
// the mean (mean-unbiased; variance bias is tracked in the bound).
struct YBetaSampler {
  YBetaSampler(int m, double beta, int depth, double weight_floor = 1e-7);
  double sample(std::function<double()> unif) const;
  double mean() const { return g1_; }
  double bias_bound() const;  // geometric depth bound, d_2 scale
  int m;
  double beta;
  int depth;
  double weight_floor;

 private:
  double g1_;
  double g2_;
};

// C_k recurrence for the Catalan toll n^alpha (alpha != 1/2),
// plus the limit-law moments E Y^k = C_k sqrt(pi)/Gamma(k(alpha+1/2)-1/2).
LimitMomentSeq catalan_Ck(const Real& alpha, int k_max);

// Limit-law variance sigma^2(alpha); alpha = 1/2 has the limit 8 ln2/pi - pi/2.
Real sigma2_alpha(const Real& alpha);
Real sigma2_alpha_limit_half();

struct Sigma2Landscape {
  std::vector<std::pair<Real, Real>> grid;  // (alpha, sigma^2)
  Real argmax{0};
  Real maxval{0};
  bool all_positive = false;
};
Sigma2Landscape sigma2_landscape(double lo = 0.05, double hi = 10.0, double step = 0.05);

// Airy / Wiener-index recurrence cross-checks at alpha = 1 and alpha = 2.
struct AiryWienerReport {
  Real omega1{0};
  Real a01{0};
  Real max_residual_airy{0};
  Real max_residual_wiener{0};
};
AiryWienerReport airy_wiener_check(int k_max);

// Central moments m_k of the limit law by tanh-sinh
// quadrature of the J integrals; k_max <= 12.
LimitMomentSeq mk_moments(const Real& alpha, int k_max, const Real& tol = Real(1e-12));

// Catalan shape-functional even moments C_{2k,0} (recurrence + closed form).
struct ShapeCk0 {
  std::vector<Real> recurrence;   // C_{2k,0} by the recurrence
  std::vector<Real> closed_form;  // by the (2k)!(2k-2)!/... formula
  std::vector<Real> gaussian_moments;  // C_{2k,0} sqrt(pi)/Gamma(k-1/2)
  Real sigma2{0};                 // 8(1-log 2)
};
ShapeCk0 shape_Ck0(int k_max);

// BST shape-functional constants (m=2, toll ln n): K(2), V, variance line.
struct BstShapeConstants {
  Real K2{0};            // K(2) = 2 sum ln k/((k+1)(k+2))
  Real K2_tail_bound{0};
  Real V{0};             // sum r_k(2)/((k+1)(k+2))
  Real V_tail_bound{0};
  Real variance_slope{0};     // C_1^2 + 2V
  Real variance_constant{0};  // -(4 - pi^2/3)
  long series_truncation = 0;
  std::vector<Real> sigma_n2;  // exact sigma_n^2 for n <= min(5000, N)
};
BstShapeConstants bst_shape_constants(long n_series = 30000);

// Catalan shape-functional constants (Ch. 8).
struct CatalanShapeConstants {
  Real C0{0};  // sum ln n beta_n/4^n
  Real C0_tail_bound{0};
  Real mean_sqrt_coeff{0};  // -2 sqrt(pi)
  Real var_slope{0};        // 8(1 - log 2)
};
CatalanShapeConstants catalan_shape_constants(long N = 200000);

// Hankel positive-semidefiniteness of a moment sequence up to the given
// order (leading principal minors of the Hankel matrices).
bool hankel_psd(const std::vector<Real>& moments, int max_order = 4,
                const Real& tol = Real(1e-20));

}  // namespace sst
