#pragma once

#include <functional>
#include <vector>

#include "sst/real.hpp"

namespace sst {

// Rising and falling factorial powers, x^(r) = x(x+1)...(x+r-1).
template <typename T>
T rising(const T& x, int r) {
  T p(1);
  for (int k = 0; k < r; ++k) p *= x + T(k);
  return p;
}

template <typename T>
T falling(const T& x, int r) {
  T p(1);
  for (int k = 0; k < r; ++k) p *= x - T(k);
  return p;
}

Real rising_real(const Real& x, int r);
Real factorial_real(int n);
Cplx rising_cplx(const Cplx& x, int r);

// Exact binomial C(n, k) as a big integer.
BigInt binomial_exact(long n, long k);
Real binomial_real(long n, long k);

// Harmonic numbers H_n^{(r)}, exact then widened.
Rational harmonic_exact(long n, int order = 1);
Real harmonic(long n, int order = 1);

// Riemann zeta for real s != 1 by Euler--Maclaurin summation.
Real zeta_em(const Real& s);
// Derivatives of zeta by central differences (step 1e-6).
Real zeta_deriv(const Real& s, int order);

// Gamma derivatives Gamma^{(k)}(x) by central differences, k <= 4.
Real gamma_deriv(const Real& x, int order);

// Gamma(x+a)/Gamma(x+b), stable for large x where the lgamma difference
// cancels catastrophically.
Real gamma_ratio(const Real& x, const Real& a, const Real& b);

// Real dilogarithm Li_2(x) for x <= 1.
Real dilog(const Real& x);

// Value of an infinite sum together with a bound on the truncation error.
struct SumResult {
  Real value{0};
  Real tail_bound{0};
  long terms_used{0};
};

// Sum_{k=k0}^{N} f(k) plus an Euler--Maclaurin tail estimate for the
// remainder Sum_{k>N} f(k).  `integral_tail(x)` must return
// int_x^infty f(t) dt; f must be smooth and eventually monotone.  The
// reported bound is twice the first omitted correction term.
SumResult em_tail_sum(const std::function<Real(const Real&)>& f, long k0, long N,
                      const std::function<Real(const Real&)>& integral_tail);

// Same, with the tail integral computed numerically (exp-sinh on [N+1, inf)).
SumResult em_tail_sum_quad(const std::function<Real(const Real&)>& f, long k0, long N);

// Only the tail estimate Sum_{k>N} f(k) (numerical integral + corrections);
// lets callers sum the head with cheaper incremental formulas.
SumResult em_tail_only(const std::function<Real(const Real&)>& f, long N);

// Plain truncated sum with a caller-supplied integral-comparison bound:
// Sum_{k=k0}^{N} f(k), bound = majorant_integral(N).
SumResult direct_sum(const std::function<Real(long)>& f, long k0, long N,
                     const std::function<Real(const Real&)>& majorant_integral);

}  // namespace sst
