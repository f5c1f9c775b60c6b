#include "sst/indicial.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

#include "sst/special.hpp"

namespace sst {

Cplx psi_eval(int m, const Cplx& lambda) {
  Cplx p = rising_cplx(lambda, m - 1);
  return p - Cplx(factorial_real(m));
}

namespace {

// psi'(lambda) = rising(lambda, m-1) * sum 1/(lambda+k); valid away from
// the nonpositive integers 0..-(m-2), which are never roots.
Cplx psi_prime_eval(int m, const Cplx& lambda) {
  Cplx p = rising_cplx(lambda, m - 1);
  Cplx s(Real(0));
  for (int k = 0; k <= m - 2; ++k) s += Cplx(Real(1)) / (lambda + Cplx(Real(k)));
  return p * s;
}

// Coefficients of rising(lambda, m-1) = sum_k stirling1u(m-1, k) lambda^k.
std::vector<BigInt> rising_coefficients(int d) {
  std::vector<BigInt> c{BigInt(1)};  // rising(x, 0) = 1
  for (int n = 0; n < d; ++n) {
    // multiply by (x + n)
    std::vector<BigInt> nxt(c.size() + 1, BigInt(0));
    for (size_t k = 0; k < c.size(); ++k) {
      nxt[k + 1] += c[k];
      nxt[k] += BigInt(n) * c[k];
    }
    c = std::move(nxt);
  }
  return c;
}

// Divide monic integer polynomial by (x - r); remainder must vanish.
std::vector<BigInt> deflate(const std::vector<BigInt>& a, long r) {
  int d = (int)a.size() - 1;
  std::vector<BigInt> q(d);
  BigInt carry = a[d];
  for (int i = d - 1; i >= 0; --i) {
    q[i] = carry;
    carry = a[i] + BigInt(r) * carry;
  }
  if (carry != 0) throw std::logic_error("deflate: nonzero remainder");
  return q;
}

Cplx horner(const std::vector<Real>& a, const Cplx& z) {
  Cplx acc(a.back());
  for (int i = (int)a.size() - 2; i >= 0; --i) acc = acc * z + Cplx(a[i]);
  return acc;
}

std::vector<Cplx> aberth(const std::vector<Real>& coeff) {
  int d = (int)coeff.size() - 1;
  if (d == 0) return {};
  // derivative coefficients
  std::vector<Real> dcoeff(d);
  for (int i = 1; i <= d; ++i) dcoeff[i - 1] = coeff[i] * i;
  // Fujiwara-style radius
  Real R(0);
  for (int k = 0; k < d; ++k) {
    Real t = pow(abs(coeff[k] / coeff[d]), Real(1) / (d - k));
    if (t > R) R = t;
  }
  R = 2 * R + 1;
  std::vector<Cplx> z(d);
  Real two_pi = 2 * pi_v();
  for (int i = 0; i < d; ++i) {
    Real theta = two_pi * i / d + Real(2) / 5;
    z[i] = Cplx(R * cos(theta), R * sin(theta));
  }
  // Converge to ~1e-30 relative; the Newton polish on the product form
  // finishes the job at full precision.
  Real tol = pow(Real(10), -30);
  for (int iter = 0; iter < 400; ++iter) {
    Real worst(0);
    for (int i = 0; i < d; ++i) {
      Cplx p = horner(coeff, z[i]);
      Cplx dp = horner(dcoeff, z[i]);
      if (abs(dp) == 0) continue;
      Cplx newton = p / dp;
      Cplx sum(Real(0));
      for (int j = 0; j < d; ++j)
        if (j != i) sum += Cplx(Real(1)) / (z[i] - z[j]);
      Cplx w = newton / (Cplx(Real(1)) - newton * sum);
      z[i] -= w;
      Real step = abs(w) / (abs(z[i]) + 1);
      if (step > worst) worst = step;
    }
    if (worst < tol) break;
  }
  return z;
}

IndicialData compute_roots(int m) {
  if (m < 2 || m > 64) throw std::domain_error("psi_roots: 2 <= m <= 64 required");
  precision::scoped_bits guard(std::max(precision::bits() * 2, 256u));

  IndicialData data;
  data.m = m;
  int d = m - 1;
  auto coeff_int = rising_coefficients(d);
  coeff_int[0] -= [&] {  // subtract m!
    BigInt f(1);
    for (int i = 2; i <= m; ++i) f *= i;
    return f;
  }();

  std::vector<Cplx> roots;
  roots.push_back(Cplx(Real(2)));
  coeff_int = deflate(coeff_int, 2);
  if (m % 2 == 1 && m > 2) {
    roots.push_back(Cplx(Real(-m)));
    coeff_int = deflate(coeff_int, -m);
  }
  std::vector<Real> coeff(coeff_int.size());
  for (size_t i = 0; i < coeff_int.size(); ++i) coeff[i] = Real(coeff_int[i]);
  auto rest = aberth(coeff);

  // Newton-polish on the full product form, then symmetrize conjugates.
  for (auto& z : rest) {
    for (int it = 0; it < 6; ++it) {
      Cplx p = psi_eval(m, z);
      Cplx dp = psi_prime_eval(m, z);
      z -= p / dp;
    }
  }
  Real imag_tol = pow(Real(10), -(long)Real::default_precision() / 2);
  std::vector<bool> used(rest.size(), false);
  for (size_t i = 0; i < rest.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    if (abs(rest[i].im) < imag_tol) {
      roots.push_back(Cplx(rest[i].re));
      continue;
    }
    // find the conjugate partner and average
    size_t best = i;
    Real bestd(-1);
    for (size_t j = 0; j < rest.size(); ++j) {
      if (used[j]) continue;
      Real dd = abs(rest[j] - conj(rest[i]));
      if (bestd < 0 || dd < bestd) { bestd = dd; best = j; }
    }
    if (best != i) used[best] = true;
    Cplx avg = best != i ? Cplx((rest[i].re + rest[best].re) / 2,
                                (rest[i].im - rest[best].im) / 2)
                         : rest[i];
    roots.push_back(avg);
    roots.push_back(conj(avg));
  }

  std::sort(roots.begin(), roots.end(), [](const Cplx& a, const Cplx& b) {
    if (a.re != b.re) return a.re > b.re;
    return a.im > b.im;
  });

  data.roots = roots;
  data.psi_prime.resize(roots.size());
  for (size_t j = 0; j < roots.size(); ++j) {
    Cplx prod(Real(1));
    for (size_t k = 0; k < roots.size(); ++k)
      if (k != j) prod *= roots[j] - roots[k];
    data.psi_prime[j] = prod;
  }
  if (m > 2) data.alpha = roots[1].re;

  Real maxres(0);
  for (auto& z : roots) {
    Real r = abs(psi_eval(m, z));
    if (r > maxres) maxres = r;
  }
  data.max_residual = maxres;

  // near-tie warnings: distinct non-conjugate roots with close real parts
  for (size_t i = 0; i + 1 < roots.size(); ++i) {
    for (size_t j = i + 1; j < roots.size(); ++j) {
      bool conj_pair = abs(roots[i] - conj(roots[j])) < imag_tol;
      if (!conj_pair && abs(roots[i].re - roots[j].re) < Real(1e-6)) {
        data.warnings.push_back("near-tie in real parts at roots " + std::to_string(i + 1) +
                                "," + std::to_string(j + 1));
      }
    }
  }
  // roots stay at the elevated internal precision; downstream arithmetic
  // rounds to the working precision on use
  return data;
}

std::map<int, IndicialData> g_cache;
std::mutex g_cache_mutex;

}  // namespace

const IndicialData& psi_roots(int m) {
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  auto it = g_cache.find(m);
  if (it != g_cache.end()) return it->second;
  IndicialData data = compute_roots(m);
  Real mfact = factorial_real(m);
  if (data.max_residual > Real(1e-9) * mfact) {
    precision::scoped_bits guard(precision::bits() * 4 + 256);
    data = compute_roots(m);
    if (data.max_residual > Real(1e-9) * mfact)
      throw std::runtime_error("psi_roots: failed to converge for m=" + std::to_string(m));
  }
  return g_cache.emplace(m, std::move(data)).first->second;
}

Real alpha_of(int m) {
  const auto& data = psi_roots(m);
  if (!data.alpha) throw std::domain_error("alpha undefined for m = 2");
  return *data.alpha;
}

std::vector<Cplx> ett_coefficients(int m, const std::vector<Real>& initial) {
  if ((int)initial.size() != m - 1)
    throw std::domain_error("ett_coefficients: need b_0..b_{m-2}");
  const auto& data = psi_roots(m);
  Real mfact = factorial_real(m);
  std::vector<Cplx> c(m - 1);
  for (int j = 0; j < m - 1; ++j) {
    Cplx sum(Real(0));
    Real kfact(1);
    for (int k = 0; k <= m - 2; ++k) {
      if (k > 0) kfact *= k;
      sum += Cplx(initial[k] * kfact) / rising_cplx(data.roots[j], k + 1);
    }
    c[j] = Cplx(mfact) * sum / data.psi_prime[j];
  }
  return c;
}

IdentityResiduals identity_residuals(int m, const Cplx& lambda_probe,
                                     const Real& perturb_psi_prime) {
  const auto& data = psi_roots(m);
  auto psip = data.psi_prime;
  if (perturb_psi_prime != 0)
    for (auto& p : psip) p = Cplx(Real(1) + perturb_psi_prime) * p;

  IdentityResiduals out;
  const auto& roots = data.roots;
  Real mfact = factorial_real(m);
  Real hm = harmonic(m), hm2 = harmonic(m, 2), hm3 = harmonic(m, 3);

  // partial-fraction identity at the probe point
  {
    Cplx lhs(Real(0));
    for (size_t j = 0; j < roots.size(); ++j)
      lhs += Cplx(Real(1)) / ((lambda_probe - roots[j]) * psip[j]);
    out.partial_fraction = abs(lhs - Cplx(Real(1)) / psi_eval(m, lambda_probe));
  }

  // differentiated partial fractions at integer shifts r in {-1} u [0, m-2] u [m-1, m+3]
  {
    Real worst(0);
    for (long r = -1; r <= m + 3; ++r) {
      Cplx lhs(Real(0));
      for (size_t j = 0; j < roots.size(); ++j) {
        Cplx t = roots[j] + Cplx(Real(r));
        lhs += Cplx(Real(1)) / (t * t * psip[j]);
      }
      Real rhs;
      if (r == -1) {
        rhs = harmonic(m - 1) / (factorial_real(m - 1) * (m - 1) * (m - 1));
      } else if (r <= m - 2) {
        Real num = factorial_real((int)r) * factorial_real((int)(m - 2 - r));
        if (r % 2 == 1) num = -num;
        rhs = num / (mfact * mfact);
      } else {
        Real fall = falling(Real(r), m - 1);
        Real hr = harmonic(r) - harmonic(r - (m - 1));
        Real num = (m % 2 == 0 ? 1 : -1) * fall * hr;
        Real den = (m % 2 == 1 ? 1 : -1) * fall - mfact;
        rhs = num / (den * den);
      }
      Real res = abs(lhs - Cplx(rhs));
      if (res > worst) worst = res;
    }
    out.shifted_inverse_square = worst;
  }

  // vanishing power sums over the roots, 0 <= k <= m-3 (vacuous for m = 2)
  {
    Real worst(0);
    for (int k = 0; k <= m - 3; ++k) {
      Cplx lhs(Real(0));
      for (size_t j = 0; j < roots.size(); ++j) {
        Cplx p(Real(1));
        for (int i = 0; i < k; ++i) p *= roots[j];
        lhs += p / psip[j];
      }
      Real res = abs(lhs);
      if (res > worst) worst = res;
    }
    out.root_power_sums = worst;
  }

  // deflated partial-fraction sum at lambda = 2
  {
    Cplx lhs(Real(0));
    for (size_t j = 1; j < roots.size(); ++j)
      lhs += Cplx(Real(1)) / ((roots[j] - Cplx(Real(2))) * psip[j]);
    Real rhs = (Real(1) - (hm2 - 1) / ((hm - 1) * (hm - 1))) / (2 * mfact);
    out.deflated_at_two = abs(lhs - Cplx(rhs));
  }

  if (m % 2 == 1) {
    // odd m: sums over all roots except lambda_{m-1} = -m
    Cplx lhs3(Real(0)), lhs4(Real(0));
    for (size_t j = 0; j + 1 < roots.size(); ++j) {
      Cplx t = roots[j] + Cplx(Real(m));
      lhs3 += Cplx(Real(1)) / (t * psip[j]);
      lhs4 += Cplx(Real(1)) / (t * t * psip[j]);
    }
    Real rhs3 = (Real(1) - (hm2 - 1) / ((hm - 1) * (hm - 1))) / (2 * mfact);
    Real rhs4 = ((hm - 1) / 12 - (hm3 - 1) / (3 * (hm - 1) * (hm - 1)) +
                 (hm2 - 1) * (hm2 - 1) / (4 * (hm - 1) * (hm - 1) * (hm - 1))) /
                mfact;
    out.odd_first_order = abs(lhs3 - Cplx(rhs3));
    out.odd_second_order = abs(lhs4 - Cplx(rhs4));
  }

  // psi'(2) = m!(H_m - 1), relative
  {
    Cplx got = psip[0];
    Real want = mfact * (hm - 1);
    out.psi_prime_two_rel = abs(got - Cplx(want)) / want;
  }

  out.max_abs = out.partial_fraction;
  for (Real v : {out.shifted_inverse_square, out.root_power_sums, out.deflated_at_two})
    out.max_abs = std::max(out.max_abs, v);
  if (out.odd_first_order) out.max_abs = std::max(out.max_abs, *out.odd_first_order);
  if (out.odd_second_order) out.max_abs = std::max(out.max_abs, *out.odd_second_order);
  return out;
}

}  // namespace sst
