#include "sst/sing_expansion.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

namespace sst {

namespace {

bool is_integer(const Real& x) { return x == floor(x); }

using Series = std::vector<Real>;  // truncated power series in w = 1-z

Series ps_mul(const Series& a, const Series& b) {
  size_t n = a.size();
  Series c(n, Real(0));
  for (size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; i + j < n; ++j) c[i + j] += a[i] * b[j];
  }
  return c;
}

Series ps_log(const Series& a) {  // a[0] == 1
  size_t n = a.size();
  Series b(n, Real(0));
  for (size_t k = 1; k < n; ++k) {
    Real acc = a[k] * k;
    for (size_t j = 1; j < k; ++j) acc -= j * b[j] * a[k - j];
    b[k] = acc / (long)k;
  }
  return b;
}

Series ps_exp(const Series& a) {  // a[0] == 0
  size_t n = a.size();
  Series e(n, Real(0));
  e[0] = 1;
  for (size_t k = 1; k < n; ++k) {
    Real acc(0);
    for (size_t j = 1; j <= k; ++j) acc += j * a[j] * e[k - j];
    e[k] = acc / (long)k;
  }
  return e;
}

Series ps_pow(const Series& a, const Real& s) {
  Series l = ps_log(a);
  for (auto& v : l) v *= s;
  return ps_exp(l);
}

Series t_over_w_series(int depth) {  // t/w = sum w^l/(l+1)
  Series T(depth + 1);
  for (int l = 0; l <= depth; ++l) T[l] = Real(1) / (l + 1);
  return T;
}

}  // namespace

void SingularExpansion::add_term(const Cplx& c, const Real& a, int p) {
  terms.push_back({c, a, p});
}

void SingularExpansion::normalize() {
  std::sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) {
    if (x.a != y.a) return x.a < y.a;
    return x.p > y.p;
  });
  std::vector<Term> out;
  for (auto& t : terms) {
    if (!out.empty() && out.back().a == t.a && out.back().p == t.p) {
      out.back().coeff += t.coeff;
    } else {
      out.push_back(t);
    }
  }
  Real eps = pow(Real(10), -(long)Real::default_precision() + 6);
  terms.clear();
  for (auto& t : out) {
    if (t.a >= remainder_exponent - Real(1) / 1000000) continue;
    if (abs(t.coeff) < eps) continue;
    terms.push_back(t);
  }
}

Real SingularExpansion::eval_real(const Real& z) const {
  Real w = 1 - z;
  Real L = -log(w);
  Real acc(0);
  for (const auto& t : terms) {
    Real v = t.coeff.re * pow(w, t.a);
    for (int i = 0; i < t.p; ++i) v *= L;
    acc += v;
  }
  return acc;
}

SingularExpansion ex_add(const SingularExpansion& x, const SingularExpansion& y) {
  SingularExpansion out = x;
  for (auto& t : y.terms) out.terms.push_back(t);
  out.remainder_exponent = std::min(x.remainder_exponent, y.remainder_exponent);
  out.remainder_logpow = std::max(x.remainder_logpow, y.remainder_logpow);
  out.remainder_loglog = x.remainder_loglog || y.remainder_loglog;
  out.constant_unknown = x.constant_unknown || y.constant_unknown;
  out.normalize();
  return out;
}

SingularExpansion ex_scale(const Cplx& c, const SingularExpansion& x) {
  SingularExpansion out = x;
  for (auto& t : out.terms) t.coeff = c * t.coeff;
  return out;
}

namespace {
void check_window(long N) {
  if (N < 16) throw std::domain_error("SeriesWindow: N >= 16 required");
}
}  // namespace

SeriesWindow series_of_power(const Real& lambda, long N) {
  check_window(N);
  SeriesWindow s;
  s.provenance = "exact: rising(lambda,n)/n!";
  s.coeffs.resize(N + 1);
  s.coeffs[0] = 1;
  for (long n = 1; n <= N; ++n) s.coeffs[n] = s.coeffs[n - 1] * (lambda + n - 1) / n;
  return s;
}

SeriesWindow series_of_log(long N) {
  check_window(N);
  SeriesWindow s;
  s.provenance = "exact: 1/n";
  s.coeffs.assign(N + 1, Real(0));
  for (long n = 1; n <= N; ++n) s.coeffs[n] = Real(1) / n;
  return s;
}

SeriesWindow series_of_polylog(const Real& alpha, int r, long N) {
  check_window(N);
  SeriesWindow s;
  s.provenance = "exact: (ln n)^r n^-alpha";
  s.coeffs.assign(N + 1, Real(0));
  for (long n = 1; n <= N; ++n) {
    Real v = pow(Real(n), -alpha);
    Real ln_n = log(Real(n));
    for (int i = 0; i < r; ++i) v *= ln_n;
    s.coeffs[n] = v;
  }
  return s;
}

SeriesWindow series_of_expansion(const SingularExpansion& e, long N) {
  check_window(N);
  SeriesWindow out;
  out.provenance = "exact expansion coefficients";
  std::vector<Real> re(N + 1, Real(0)), im(N + 1, Real(0));
  // cache L^p coefficient arrays
  std::map<int, std::vector<Real>> lp;
  lp[0] = std::vector<Real>(N + 1, Real(0));
  lp[0][0] = 1;
  std::function<const std::vector<Real>&(int)> lpow =
      [&](int p) -> const std::vector<Real>& {
    auto it = lp.find(p);
    if (it != lp.end()) return it->second;
    const auto& prev = lpow(p - 1);
    std::vector<Real> cur(N + 1, Real(0));
    for (long i = 0; i <= N; ++i) {
      if (prev[i] == 0) continue;
      for (long j = 1; i + j <= N; ++j) cur[i + j] += prev[i] / j;
    }
    return lp.emplace(p, std::move(cur)).first->second;
  };
  for (const auto& t : e.terms) {
    // coefficients of (1-z)^a
    std::vector<Real> g(N + 1);
    g[0] = 1;
    for (long n = 1; n <= N; ++n) g[n] = g[n - 1] * (Real(n - 1) - t.a) / n;
    const auto& l = lpow(t.p);
    for (long n = 0; n <= N; ++n) {
      Real conv(0);
      for (long i = 0; i <= n; ++i) {
        if (g[i] == 0) continue;
        conv += g[i] * l[n - i];
      }
      re[n] += t.coeff.re * conv;
      im[n] += t.coeff.im * conv;
    }
  }
  out.coeffs = std::move(re);
  return out;
}

SeriesWindow hadamard_series(const SeriesWindow& f, const SeriesWindow& g) {
  SeriesWindow out;
  out.provenance = "hadamard(" + f.provenance + ", " + g.provenance + ")";
  size_t n = std::min(f.coeffs.size(), g.coeffs.size());
  out.coeffs.resize(n);
  for (size_t i = 0; i < n; ++i) out.coeffs[i] = f.coeffs[i] * g.coeffs[i];
  return out;
}

namespace {

// terms of coef * t^{s}(ln t)^q expanded in (1-z)^{s+j} L^{q-i}
void emit_t_power(SingularExpansion& out, const Cplx& coef, const Real& s, int q, int depth) {
  Series T = t_over_w_series(depth);
  Series Ts = ps_pow(T, s);
  Series U = ps_log(T);
  // (ln t)^q = sum_i C(q,i) (-L)^{q-i} U^i
  Series Ui(depth + 1, Real(0));
  Ui[0] = 1;
  for (int i = 0; i <= q; ++i) {
    if (i > 0) Ui = ps_mul(Ui, U);
    Real binq = binomial_real(q, i);
    Series W = ps_mul(Ts, Ui);
    Real sign = (q - i) % 2 == 0 ? Real(1) : Real(-1);
    for (int j = 0; j <= depth; ++j) {
      if (W[j] == 0) continue;
      out.add_term(coef * Cplx(binq * sign * W[j]), s + j, q - i);
    }
  }
}

}  // namespace

SingularExpansion polylog_expansion(const Real& alpha, int r, int depth) {
  if (r < 0 || r > 4) throw std::domain_error("polylog_expansion: r <= 4");
  if (depth < 1 || depth > 12) throw std::domain_error("polylog_expansion: depth <= 12");
  SingularExpansion out;

  if (is_integer(alpha) && alpha >= 1) {
    long M = (long)alpha;
    if (r != 0)
      throw std::domain_error(
          "polylog_expansion: positive integer alpha with r > 0 beyond implemented residue order");
    if (M == 1) {
      // Li_{1,0} = L exactly
      out.add_term(Cplx(Real(1)), Real(0), 1);
      out.remainder_exponent = Real(1e6);
      out.normalize();
      return out;
    }
    // Li_{M,0} = ((-1)^M/(M-1)!) t^{M-1} (ln t - H_{M-1})
    //            + sum_{j != M-1} ((-1)^j/j!) zeta(M-j) t^j
    Real fac(1);
    for (long i = 2; i <= M - 1; ++i) fac *= i;
    Real sgn = M % 2 == 0 ? Real(1) : Real(-1);
    emit_t_power(out, Cplx(sgn / fac), Real(M - 1), 1, depth);
    emit_t_power(out, Cplx(-sgn * harmonic(M - 1) / fac), Real(M - 1), 0, depth);
    for (int j = 0; j <= depth; ++j) {
      if (j == M - 1) continue;
      Real sj = j % 2 == 0 ? Real(1) : Real(-1);
      Real fj(1);
      for (int i = 2; i <= j; ++i) fj *= i;
      emit_t_power(out, Cplx(sj / fj * zeta_em(Real(M - j))), Real(j), 0, depth);
    }
    out.remainder_exponent = Real(depth + 1);
    out.remainder_logpow = 1;
    out.normalize();
    return out;
  }

  // generic path: alpha not a positive integer
  // (-1)^r sum_k C(r,k)(-1)^k Gamma^(k)(1-alpha) t^{alpha-1} (ln t)^{r-k}
  Real sgn_r = r % 2 == 0 ? Real(1) : Real(-1);
  for (int k = 0; k <= r; ++k) {
    Real gk = gamma_deriv(1 - alpha, k);
    Real sgn_k = k % 2 == 0 ? Real(1) : Real(-1);
    emit_t_power(out, Cplx(sgn_r * sgn_k * binomial_real(r, k) * gk), alpha - 1, r - k, depth);
  }
  // analytic part: sum_j ((-1)^{j+r}/j!) zeta^{(r)}(alpha - j) t^j
  for (int j = 0; j <= depth; ++j) {
    Real sgn = (j + r) % 2 == 0 ? Real(1) : Real(-1);
    Real fj(1);
    for (int i = 2; i <= j; ++i) fj *= i;
    emit_t_power(out, Cplx(sgn / fj * zeta_deriv(alpha - j, r)), Real(j), 0, depth);
  }
  out.remainder_exponent = std::min(Real(alpha + depth), Real(depth + 1));
  out.remainder_logpow = r;
  out.normalize();
  return out;
}

HadamardPowerCoeffs hadamard_power_coeffs(const Real& alpha, const Real& beta, int K) {
  if (is_integer(alpha) || is_integer(beta) || is_integer(alpha + beta))
    throw std::domain_error(
        "hadamard_power_coeffs: integer parameter; use the O-form of Props 4.4/4.5");
  HadamardPowerCoeffs out;
  Real lam0 = tgamma_r(1 - alpha - beta) / (tgamma_r(1 - alpha) * tgamma_r(1 - beta));
  Real mu0 = tgamma_r(alpha + beta - 1) / (tgamma_r(alpha) * tgamma_r(beta));
  for (int k = 0; k <= K; ++k) {
    out.lambda.push_back(lam0 * rising_real(alpha, k) * rising_real(beta, k) /
                         rising_real(alpha + beta, k));
    out.mu.push_back(mu0 * rising_real(1 - alpha, k) * rising_real(1 - beta, k) /
                     rising_real(2 - alpha - beta, k));
  }
  return out;
}

SingularExpansion differentiate_expansion(const SingularExpansion& e, int k) {
  SingularExpansion cur = e;
  for (int it = 0; it < k; ++it) {
    SingularExpansion next;
    for (const auto& t : cur.terms) {
      // d/dz (1-z)^a L^p = -a (1-z)^{a-1} L^p + p (1-z)^{a-1} L^{p-1}
      if (t.a != 0) next.add_term(Cplx(-t.a) * t.coeff, t.a - 1, t.p);
      if (t.p > 0) next.add_term(Cplx(Real(t.p)) * t.coeff, t.a - 1, t.p - 1);
    }
    next.remainder_exponent = cur.remainder_exponent - 1;
    next.remainder_logpow = cur.remainder_logpow;
    next.constant_unknown = false;  // constants differentiate away
    next.normalize();
    cur = std::move(next);
  }
  return cur;
}

namespace {

// append the exact primitive of c (1-z)^a L^p over [0, z]
void integrate_term(SingularExpansion& out, const Cplx& c, const Real& a, int p) {
  if (a == -1) {
    out.add_term(c / Real(p + 1), Real(0), p + 1);
    return;
  }
  // I(a,p) = -(1-z)^{a+1} L^p/(a+1) + (p/(a+1)) I(a,p-1);  I(a,0) adds the
  // constant 1/(a+1).
  Cplx factor = c;
  int q = p;
  while (q > 0) {
    out.add_term(Cplx(Real(-1)) * factor / (a + 1), a + 1, q);
    factor = factor * Cplx(Real(q)) / (a + 1);
    --q;
  }
  out.add_term(Cplx(Real(-1)) * factor / (a + 1), a + 1, 0);
  out.add_term(factor / (a + 1), Real(0), 0);
}

}  // namespace

SingularExpansion integrate_expansion(const SingularExpansion& e) {
  SingularExpansion out;
  for (const auto& t : e.terms) integrate_term(out, t.coeff, t.a, t.p);
  // remainder under integration: four cases by exponent and log power
  const Real& A = e.remainder_exponent;
  int B = e.remainder_logpow;
  if (A < -1) {
    out.remainder_exponent = A + 1;
    out.remainder_logpow = B;
  } else if (A == -1) {
    if (B == -1) {
      out.remainder_exponent = Real(0);
      out.remainder_loglog = true;
    } else {
      out.remainder_exponent = Real(0);
      out.remainder_logpow = B + 1;
    }
  } else {
    // integral through 1 exists; unknown constant absorbed
    out.remainder_exponent = A + 1;
    out.remainder_logpow = B;
    out.constant_unknown = true;
  }
  out.constant_unknown = out.constant_unknown || e.constant_unknown;
  out.normalize();
  return out;
}

DecayReport verify_expansion(const SingularExpansion& e, const SeriesWindow& s,
                             const std::vector<long>& n_grid) {
  DecayReport rep;
  long maxn = 0;
  for (long n : n_grid) maxn = std::max(maxn, n);
  if (maxn >= (long)s.coeffs.size())
    throw std::domain_error("verify_expansion: grid exceeds series window");
  auto predicted = series_of_expansion(e, maxn);
  Real scale(0);
  for (long n : n_grid) scale = std::max(scale, Real(abs(s.coeffs[n])));
  Real zero_eps = pow(Real(10), -(long)Real::default_precision() + 10) * (1 + scale);
  bool all_zero = true;
  for (long n : n_grid) {
    Real err = abs(s.coeffs[n] - predicted.coeffs[n]);
    rep.errors.push_back({n, err});
    if (err > zero_eps) all_zero = false;
  }
  rep.threshold = -(e.remainder_exponent + 1) + Real(15) / 100 +
                  (e.remainder_logpow > 0 ? Real(15) / 100 : Real(0));
  if (all_zero) {
    rep.zero_error = true;
    rep.slope = Real(-1e6);
    rep.pass = true;
    return rep;
  }
  // least squares on (ln n, ln err), skipping exact zeros
  Real sx(0), sy(0), sxx(0), sxy(0);
  long cnt = 0;
  for (auto& [n, err] : rep.errors) {
    if (err == 0) continue;
    Real x = log(Real(n)), y = log(err);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
    ++cnt;
  }
  rep.slope = (Real(cnt) * sxy - sx * sy) / (Real(cnt) * sxx - sx * sx);
  rep.pass = rep.slope <= rep.threshold;
  return rep;
}

bool harmonic_square_identity_exact(long n_max) {
  // H_n^2 == sum_{k<=n} [z^k]L^2 + H_n^{(2)}, all in exact rationals.
  Rational h(0), h2(0), cum(0);
  for (long n = 1; n <= n_max; ++n) {
    h += Rational(1, n);
    h2 += Rational(1, BigInt(n) * n);
    if (n >= 2) {
      Rational hk1(0);  // H_{n-1}
      hk1 = h - Rational(1, n);
      cum += Rational(2, n) * hk1;
    }
    if (h * h != cum + h2) return false;
  }
  return true;
}

}  // namespace sst
