#include "sst/special.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <stdexcept>

namespace sst {

Real rising_real(const Real& x, int r) { return rising<Real>(x, r); }

Real factorial_real(int n) {
  Real f(1);
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

Cplx rising_cplx(const Cplx& x, int r) {
  Cplx p(Real(1));
  for (int k = 0; k < r; ++k) p *= x + Cplx(Real(k));
  return p;
}

BigInt binomial_exact(long n, long k) {
  if (k < 0 || k > n) return BigInt(0);
  if (k > n - k) k = n - k;
  BigInt num(1);
  for (long i = 0; i < k; ++i) {
    num *= BigInt(n - i);
    num /= BigInt(i + 1);  // exact at each step: product of i+1 consecutive ints
  }
  return num;
}

Real binomial_real(long n, long k) { return Real(binomial_exact(n, k)); }

Rational harmonic_exact(long n, int order) {
  Rational h(0);
  for (long j = 1; j <= n; ++j) {
    BigInt d(j);
    for (int r = 1; r < order; ++r) d *= BigInt(j);
    h += Rational(1, d);
  }
  return h;
}

Real harmonic(long n, int order) { return Real(harmonic_exact(n, order)); }

Real zeta_em(const Real& s) {
  if (s == 1) throw std::domain_error("zeta: pole at s = 1");
  // Euler--Maclaurin: sum_{k<N} k^-s + N^{1-s}/(s-1) + N^-s/2
  //                   + sum_j B_{2j}/(2j)! rising(s,2j-1) N^{-s-2j+1}.
  const long N = 40;
  const int p = 24;
  Real acc(0);
  for (long k = 1; k < N; ++k) acc += pow(Real(k), -s);
  Real Nr(N);
  acc += pow(Nr, 1 - s) / (s - 1);
  acc += pow(Nr, -s) / 2;
  Real npow = pow(Nr, -s - 1);  // N^{-s-2j+1} at j=1
  Real rf = s;                  // rising(s, 2j-1) at j=1
  for (int j = 1; j <= p; ++j) {
    Real b2j = boost::math::bernoulli_b2n<Real>(j);
    Real fact(1);
    for (int i = 2; i <= 2 * j; ++i) fact *= i;
    acc += b2j / fact * rf * npow;
    npow /= Nr * Nr;
    rf *= (s + 2 * j - 1) * (s + 2 * j);
  }
  return acc;
}

Real zeta_deriv(const Real& s, int order) {
  if (order == 0) return zeta_em(s);
  if (order <= 2) {
    // central differences at step 1e-6, one Richardson level
    const Real h = Real(1) / 1000000;
    const Real h2 = h / 2;
    if (order == 1) {
      Real dh = (zeta_em(s + h) - zeta_em(s - h)) / (2 * h);
      Real dh2 = (zeta_em(s + h2) - zeta_em(s - h2)) / (2 * h2);
      return (4 * dh2 - dh) / 3;
    }
    Real z0 = zeta_em(s);
    Real sh = (zeta_em(s + h) - 2 * z0 + zeta_em(s - h)) / (h * h);
    Real sh2 = (zeta_em(s + h2) - 2 * z0 + zeta_em(s - h2)) / (h2 * h2);
    return (4 * sh2 - sh) / 3;
  }
  if (order <= 4) {
    const Real h = Real(1) / 10000;
    if (order == 3)
      return (zeta_em(s + 2 * h) - 2 * zeta_em(s + h) + 2 * zeta_em(s - h) -
              zeta_em(s - 2 * h)) /
             (2 * h * h * h);
    return (zeta_em(s + 2 * h) - 4 * zeta_em(s + h) + 6 * zeta_em(s) - 4 * zeta_em(s - h) +
            zeta_em(s - 2 * h)) /
           (h * h * h * h);
  }
  throw std::domain_error("zeta_deriv: order > 4 not supported");
}

namespace {
Real tg(const Real& x) { return boost::multiprecision::tgamma(x); }
}

Real gamma_deriv(const Real& x, int order) {
  if (order == 0) return tg(x);
  if (order <= 2) {
    // central differences at step 1e-6, one Richardson level
    const Real h = Real(1) / 1000000;
    const Real h2 = h / 2;
    Real xp = x + h, xm = x - h, xp2 = x + h2, xm2 = x - h2;
    if (order == 1) {
      Real dh = (tg(xp) - tg(xm)) / (2 * h);
      Real dh2 = (tg(xp2) - tg(xm2)) / (2 * h2);
      return (4 * dh2 - dh) / 3;
    }
    Real t0 = tg(x);
    Real sh = (tg(xp) - 2 * t0 + tg(xm)) / (h * h);
    Real sh2 = (tg(xp2) - 2 * t0 + tg(xm2)) / (h2 * h2);
    return (4 * sh2 - sh) / 3;
  }
  if (order <= 4) {
    const Real h = Real(1) / 10000;
    Real xp = x + h, xm = x - h, xpp = x + 2 * h, xmm = x - 2 * h;
    if (order == 3) return (tg(xpp) - 2 * tg(xp) + 2 * tg(xm) - tg(xmm)) / (2 * h * h * h);
    return (tg(xpp) - 4 * tg(xp) + 6 * tg(x) - 4 * tg(xm) + tg(xmm)) / (h * h * h * h);
  }
  throw std::domain_error("gamma_deriv: order > 4 not supported");
}

Real gamma_ratio(const Real& x, const Real& a, const Real& b) {
  if (x < Real(1e15)) {
    return exp(lgamma_r(x + a) - lgamma_r(x + b));
  }
  // Gamma(x+a)/Gamma(x+b) = x^{a-b} [1 + (a-b)(a+b-1)/(2x) + O(x^{-2})]
  Real d = a - b;
  return pow(x, d) * (1 + d * (a + b - 1) / (2 * x));
}

Real dilog(const Real& x) {
  if (x > 1) throw std::domain_error("dilog: x > 1");
  if (x == 0) return Real(0);
  if (x == 1) return pi_v() * pi_v() / 6;
  if (x < -1) {
    // Li2(x) = -pi^2/6 - ln^2(-x)/2 - Li2(1/x)
    Real lx = log(-x);
    return -pi_v() * pi_v() / 6 - lx * lx / 2 - dilog(1 / x);
  }
  if (x < Real(-1) / 2) {
    // Landen: Li2(x) = -Li2(x/(x-1)) - ln^2(1-x)/2
    Real l = log(1 - x);
    return -dilog(x / (x - 1)) - l * l / 2;
  }
  if (x > Real(1) / 2) {
    // Li2(x) = pi^2/6 - ln(x)ln(1-x) - Li2(1-x)
    return pi_v() * pi_v() / 6 - log(x) * log(1 - x) - dilog(1 - x);
  }
  Real term = x, acc = x;
  long k = 2;
  Real eps = pow(Real(10), -(long)Real::default_precision() - 2);
  while (true) {
    term *= x;
    Real add = term / (k * k);
    acc += add;
    if (abs(add) < eps * abs(acc)) break;
    ++k;
    if (k > 100000) break;
  }
  return acc;
}

namespace {

// Central-difference derivatives of f at x, orders 1, 3, 5; step h.
Real fd1(const std::function<Real(const Real&)>& f, const Real& x, const Real& h) {
  return (f(x + h) - f(x - h)) / (2 * h);
}
Real fd3(const std::function<Real(const Real&)>& f, const Real& x, const Real& h) {
  return (f(x + 2 * h) - 2 * f(x + h) + 2 * f(x - h) - f(x - 2 * h)) / (2 * h * h * h);
}
Real fd5(const std::function<Real(const Real&)>& f, const Real& x, const Real& h) {
  return (f(x + 3 * h) - 4 * f(x + 2 * h) + 5 * f(x + h) - 5 * f(x - h) + 4 * f(x - 2 * h) -
          f(x - 3 * h)) /
         (2 * h * h * h * h * h);
}

SumResult em_tail_common(const std::function<Real(const Real&)>& f, long k0, long N,
                         const Real& integral_from_Np1) {
  SumResult r;
  Real acc(0);
  for (long k = k0; k <= N; ++k) acc += f(Real(k));
  // Tail from N+1: integral + f/2 - f'/12 + f'''/720, remainder ~ f^(5)/30240.
  Real a(N + 1);
  Real h1 = a * Real(1e-6);
  Real h2 = a * Real(1e-4);  // coarser for the higher stencils
  Real d1 = fd1(f, a, h1), d3 = fd3(f, a, h2), d5 = fd5(f, a, h2);
  acc += integral_from_Np1 + f(a) / 2 - d1 / 12 + d3 / 720;
  r.value = acc;
  r.tail_bound = 2 * abs(d5) / 30240;
  r.terms_used = N - k0 + 1;
  return r;
}

}  // namespace

SumResult em_tail_sum(const std::function<Real(const Real&)>& f, long k0, long N,
                      const std::function<Real(const Real&)>& integral_tail) {
  return em_tail_common(f, k0, N, integral_tail(Real(N + 1)));
}

namespace {

// int_{N+1}^inf f dx by exp-sinh, guarding the double-exponentially large
// abscissas the quadrature probes.
std::pair<Real, Real> tail_integral_quad(const std::function<Real(const Real&)>& f, long N) {
  boost::math::quadrature::exp_sinh<Real> integrator;
  Real a(N + 1);
  const Real cutoff = Real("1e60");
  auto g = [&](const Real& x) { return x > cutoff ? Real(0) : f(x); };
  Real err;
  Real integral = integrator.integrate(g, a, std::numeric_limits<Real>::infinity(),
                                       Real(1e-30), &err);
  return {integral, abs(err * integral)};
}

}  // namespace

SumResult em_tail_sum_quad(const std::function<Real(const Real&)>& f, long k0, long N) {
  auto [integral, qerr] = tail_integral_quad(f, N);
  SumResult r = em_tail_common(f, k0, N, integral);
  r.tail_bound += qerr;
  return r;
}

SumResult em_tail_only(const std::function<Real(const Real&)>& f, long N) {
  auto [integral, qerr] = tail_integral_quad(f, N);
  // empty head: corrections are evaluated at N+1
  SumResult r = em_tail_common(f, N + 1, N, integral);
  r.tail_bound += qerr;
  r.terms_used = 0;
  return r;
}

SumResult direct_sum(const std::function<Real(long)>& f, long k0, long N,
                     const std::function<Real(const Real&)>& majorant_integral) {
  SumResult r;
  Real acc(0);
  for (long k = k0; k <= N; ++k) acc += f(k);
  r.value = acc;
  r.tail_bound = majorant_integral(Real(N));
  r.terms_used = N - k0 + 1;
  return r;
}

}  // namespace sst
