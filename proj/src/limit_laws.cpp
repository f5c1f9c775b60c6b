#include "sst/limit_laws.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <algorithm>
#include <functional>
#include <memory>

#include "sst/indicial.hpp"
#include "sst/transfer.hpp"

namespace sst {

namespace {

Real sqrt_pi() { return sqrt(pi_v()); }

Real multinomial3(int k, int k1, int k2, int k3) {
  Real v(1);
  for (int i = 2; i <= k; ++i) v *= i;
  for (int i = 2; i <= k1; ++i) v /= i;
  for (int i = 2; i <= k2; ++i) v /= i;
  for (int i = 2; i <= k3; ++i) v /= i;
  return v;
}

}  // namespace

CltConstants rpm_clt_constants(const TollSpec& spec, long N) {
  const int m = spec.m;
  if (m > 26) throw DomainError("rpm_clt_constants: the small-toll CLT is stated for m <= 26");
  CltConstants out;
  out.m = m;
  out.r_truncation = N;

  auto k1 = k1_sum(spec);
  Real hm1 = harmonic(m) - 1;
  out.mu = k1.value / hm1;

  auto mu = rpm_mean(spec, N);

  // self-convolution (mu*mu)(s), s <= N-1
  std::vector<Real> conv(N, Real(0));
  for (long i = 0; i < N; ++i) {
    if (mu[i] == 0) continue;
    for (long j = i; i + j < N; ++j) {
      Real t = mu[i] * mu[j];
      conv[i + j] += (i == j) ? t : 2 * t;
    }
  }

  std::vector<Real> r(N, Real(0));
  {
    detail::BinomialPrefix<Real> p1(m), p2(m);
    // pair-weight prefix for m >= 3: weights C(n-2-s, m-3)
    std::vector<Real> pair_sums(std::max(0, m - 2), Real(0));
    std::vector<Real> pair_cm;
    for (int t = 0; t <= m - 3; ++t) pair_cm.push_back(Real(binomial_exact(m - 3, t)));
    bool pair_started = false;

    Real cnm1(1);
    for (long n = m - 1; n < N; ++n) {
      if (n > m - 1) cnm1 = cnm1 * Real(n) / Real(n - (m - 1));
      long jnew = n - (m - 1);
      p1.push(mu[jnew]);
      p2.push(mu[jnew] * mu[jnew]);
      Real E1 = m * p1.top() / cnm1;
      Real E2 = m * p2.top() / cnm1;
      Real E11(0);
      if (m == 2) {
        E11 = 2 * conv[n - 1] / cnm1;  // m(m-1) = 2, pair sum = conv(n-1)/C(n,1)
      } else {
        // advance the C(n-2-s, m-3) weighted prefix over conv
        if (!pair_started) {
          for (int t = 0; t <= m - 3; ++t) pair_sums[t] = pair_cm[t] * conv[0];
          pair_started = true;
        } else {
          std::vector<Real> next(m - 2);
          for (int t = 0; t <= m - 3; ++t)
            next[t] = pair_sums[t] + (t > 0 ? pair_sums[t - 1] : Real(0)) +
                      pair_cm[t] * conv[jnew];
          pair_sums = std::move(next);
        }
        E11 = Real(m) * (m - 1) * pair_sums[m - 3] / cnm1;
      }
      Real c = toll_value(spec, n) - mu[n];
      r[n] = c * c + 2 * c * E1 + E2 + E11;
    }
  }

  Real acc(0);
  for (long j = m - 1; j < N; ++j) acc += r[j] / Real((j + 1) * (j + 2));
  out.sigma2 = acc / hm1;

  // tail bound from an empirical power-of-n majorant over the last window
  Real rN(0), rN2(0);
  for (long j = (3 * N) / 4; j < N; ++j) rN = std::max(rN, Real(abs(r[j])));
  for (long j = (3 * N) / 8; j < N / 2; ++j) rN2 = std::max(rN2, Real(abs(r[j])));
  if (rN > 0 && rN2 > 0) {
    Real q = log(rN / rN2) / ln2_v();
    if (q < 0) q = 0;
    if (q > Real(6) / 5) q = Real(6) / 5;
    Real c = rN / pow(Real(N), q);
    // sum_{j>N} c j^q / j^2 <= c N^{q-1}/(1-q) for q < 1
    Real denom = 1 - q;
    if (denom < Real(1) / 10) denom = Real(1) / 10;
    out.tail_bound = c * pow(Real(N), q - 1) / denom / hm1;
  }
  return out;
}

Real borderline_sigma2(int m) {
  Real rise = rising_real(Real(3) / 2, m - 1);
  Real mfact = factorial_real(m);
  Real num = rise * rise * (pi_v() * (m - 1) / 4 + 1) - mfact * mfact;
  Real den = (harmonic(m) - 1) * (mfact - rise) * (mfact - rise);
  return num / den;
}

LimitMomentSeq y_beta_moments(int m, const Real& beta, int k_max) {
  if (!(beta > Real(1) / 2)) throw DomainError("y_beta_moments: beta > 1/2 required");
  if (beta == 1) throw DomainError("y_beta_moments: beta = 1 is the path-length pole");
  if (m > 12 && k_max > 2)
    throw DomainError("y_beta_moments: tuple enumeration exceeds capacity for m > 12");
  LimitMomentSeq out;
  out.kind = "gk";
  out.params = {{"m", Real(m)}, {"beta", beta}};
  Real mfact = factorial_real(m);
  std::vector<Real> g(k_max + 1);
  g[0] = 1;
  auto contraction = [&](int k) {
    return 1 - mfact * tgamma_r(k * beta + 1) / tgamma_r(k * beta + m);
  };
  // multivariate Beta via log-gammas
  auto logB = [&](const std::vector<int>& ks) {
    Real acc(0), s(0);
    for (int ki : ks) {
      acc += lgamma_r(ki * beta + 1);
      s += ki * beta;
    }
    return acc - lgamma_r(s + m);
  };
  for (int k = 1; k <= k_max; ++k) {
    Real sum(0);
    // ordered tuples (k_1..k_m, k_{m+1}) summing to k with k_i < k, i <= m
    std::vector<int> cur(m + 1, 0);
    std::function<void(int, int)> rec = [&](int pos, int left) {
      if (pos == m) {
        cur[m] = left;
        Real mult(1);
        for (int i = 2; i <= k; ++i) mult *= i;
        for (int i = 0; i <= m; ++i)
          for (int f = 2; f <= cur[i]; ++f) mult /= f;
        Real prod(1);
        bool zero = false;
        for (int i = 0; i < m; ++i) {
          if (g[cur[i]] == 0) { zero = true; break; }
          prod *= g[cur[i]];
        }
        if (!zero) {
          std::vector<int> ks(cur.begin(), cur.begin() + m);
          sum += mult * prod * exp(logB(ks));
        }
        return;
      }
      for (int v = 0; v <= std::min(left, k - 1); ++v) {
        cur[pos] = v;
        rec(pos + 1, left - v);
      }
      cur[pos] = 0;
    };
    rec(0, k);
    g[k] = factorial_real(m - 1) * sum / contraction(k);
  }
  out.values = g;
  out.moments = g;
  return out;
}

YBetaSampler::YBetaSampler(int m_, double beta_, int depth_, double weight_floor_)
    : m(m_), beta(beta_), depth(depth_), weight_floor(weight_floor_) {
  auto seq = y_beta_moments(m, Real(beta), 2);
  g1_ = to_double(seq.values[1]);
  g2_ = to_double(seq.values[2]);
}

double YBetaSampler::sample(std::function<double()> unif) const {
  std::function<double(int, double)> rec = [&](int depth_left, double weight) -> double {
    if (depth_left == 0 || weight < weight_floor) return g1_;
    // Dirichlet(1,...,1) spacings from m-1 sorted uniforms
    double cuts[64];
    for (int i = 0; i < m - 1; ++i) cuts[i] = unif();
    std::sort(cuts, cuts + (m - 1));
    double val = 1.0;
    double prev = 0.0;
    for (int i = 0; i < m; ++i) {
      double next = (i == m - 1) ? 1.0 : cuts[i];
      double s = next - prev;
      prev = next;
      double sb = std::pow(s, beta);
      val += sb * rec(depth_left - 1, weight * sb);
    }
    return val;
  };
  return rec(depth, 1.0);
}

double YBetaSampler::bias_bound() const {
  // d_2 contraction rate rho^2 = m! Gamma(2 beta + 1)/Gamma(2 beta + m)
  double rho2 = to_double(factorial_real(m) * tgamma_r(Real(2 * beta + 1)) /
                          tgamma_r(Real(2 * beta + m)));
  double sd = std::sqrt(std::max(0.0, g2_ - g1_ * g1_));
  return std::pow(std::sqrt(rho2), depth) * sd + 3.0 * weight_floor * sd;
}

LimitMomentSeq catalan_Ck(const Real& alpha, int k_max) {
  if (!(alpha > 0)) throw DomainError("catalan_Ck: alpha > 0 required");
  if (alpha == Real(1) / 2)
    throw DomainError("catalan_Ck: C_1 pole at alpha = 1/2; use mk_moments or the shape route");
  LimitMomentSeq out;
  out.kind = "ck";
  out.params = {{"alpha", alpha}};
  std::vector<Real> C(k_max + 1, Real(0));
  C[0] = 1;  // conventional; the recurrence starts at C_1
  if (k_max >= 1) C[1] = tgamma_r(alpha - Real(1) / 2) / sqrt_pi();
  for (int k = 2; k <= k_max; ++k) {
    Real s(0);
    for (int j = 1; j <= k - 1; ++j) s += binomial_real(k, j) * C[j] * C[k - j];
    Real ratio = tgamma_r(k * alpha + Real(k) / 2 - 1) /
                 tgamma_r((k - 1) * alpha + Real(k) / 2 - 1);
    C[k] = s / 4 + k * C[k - 1] * ratio;
  }
  out.values = C;
  out.moments.assign(k_max + 1, Real(1));
  for (int k = 1; k <= k_max; ++k)
    out.moments[k] = C[k] * sqrt_pi() / tgamma_r(k * (alpha + Real(1) / 2) - Real(1) / 2);
  return out;
}

Real sigma2_alpha_limit_half() { return 8 * ln2_v() / pi_v() - pi_v() / 2; }

Real sigma2_alpha(const Real& alpha) {
  if (!(alpha > 0)) throw DomainError("sigma2_alpha: alpha > 0 required");
  if (alpha == Real(1) / 2) throw DomainError("sigma2_alpha: alpha = 1/2 (use the limit value)");
  auto ck = catalan_Ck(alpha, 2);
  const Real& C1 = ck.values[1];
  const Real& C2 = ck.values[2];
  Real g_a = tgamma_r(alpha);
  return C2 * sqrt_pi() / tgamma_r(2 * alpha + Real(1) / 2) - C1 * C1 * pi_v() / (g_a * g_a);
}

Sigma2Landscape sigma2_landscape(double lo, double hi, double step) {
  Sigma2Landscape out;
  out.all_positive = true;
  auto eval = [&](const Real& a) {
    return a == Real(1) / 2 ? sigma2_alpha_limit_half() : sigma2_alpha(a);
  };
  long steps = std::lround((hi - lo) / step);
  Real best_a(0), best_v(-1);
  for (long i = 0; i <= steps; ++i) {
    // exact grid arithmetic keeps alpha = 1/2 representable
    Real a = Real(std::lround((lo + i * step) * 1000000)) / 1000000;
    Real v = eval(a);
    out.grid.push_back({a, v});
    if (!(v > 0)) out.all_positive = false;
    if (v > best_v) { best_v = v; best_a = a; }
  }
  // golden-section refinement on [0.5, 1.0] seeded by the grid
  Real lo_b = std::max(Real(1) / 2, best_a - Real(1) / 10);
  Real hi_b = std::min(Real(1), best_a + Real(1) / 10);
  Real invphi = (sqrt(Real(5)) - 1) / 2;
  Real a = lo_b, b = hi_b;
  Real c = b - invphi * (b - a), d2 = a + invphi * (b - a);
  Real fc = eval(c), fd = eval(d2);
  for (int it = 0; it < 200 && abs(b - a) > Real(1e-12); ++it) {
    if (fc > fd) {
      b = d2; d2 = c; fd = fc;
      c = b - invphi * (b - a);
      fc = eval(c);
    } else {
      a = c; c = d2; fc = fd;
      d2 = a + invphi * (b - a);
      fd = eval(d2);
    }
  }
  out.argmax = (a + b) / 2;
  out.maxval = eval(out.argmax);
  return out;
}

AiryWienerReport airy_wiener_check(int k_max) {
  AiryWienerReport rep;
  auto c1 = catalan_Ck(Real(1), k_max);
  auto c2 = catalan_Ck(Real(2), k_max);
  // Omega_k = C_k(1)/2; 2 Omega_k = sum C(k,j) Omega_j Omega_{k-j} + k(3k-4) Omega_{k-1}
  std::vector<Real> omega(k_max + 1);
  for (int k = 0; k <= k_max; ++k) omega[k] = c1.values[k] / 2;
  rep.omega1 = omega[1];
  for (int k = 2; k <= k_max; ++k) {
    Real rhs(0);
    for (int j = 1; j <= k - 1; ++j) rhs += binomial_real(k, j) * omega[j] * omega[k - j];
    rhs += Real(k) * (3 * k - 4) * omega[k - 1];
    Real res = abs(2 * omega[k] - rhs) / abs(2 * omega[k]);
    rep.max_residual_airy = std::max(rep.max_residual_airy, res);
  }
  // a_{0,l} = 2^{2l-1} C_l(2); a = (1/2) sum C(l,j) a a + l(5l-4)(5l-6) a_{l-1}
  std::vector<Real> a(k_max + 1);
  for (int l = 0; l <= k_max; ++l) a[l] = pow(Real(2), 2 * l - 1) * c2.values[l];
  rep.a01 = a[1];
  for (int l = 2; l <= k_max; ++l) {
    Real rhs(0);
    for (int j = 1; j <= l - 1; ++j) rhs += binomial_real(l, j) * a[j] * a[l - j];
    rhs = rhs / 2 + Real(l) * (5 * l - 4) * (5 * l - 6) * a[l - 1];
    Real res = abs(a[l] - rhs) / abs(a[l]);
    rep.max_residual_wiener = std::max(rep.max_residual_wiener, res);
  }
  return rep;
}

namespace {

// J_{k1,k2,k3} by tanh-sinh, split at 1/2 to keep each endpoint singularity
// at an interval end.  The integrator needs an explicit min_complement:
// the library default underflows for variable-precision scalars.
struct JIntegrator {
  Real alpha_prime;
  bool log_bracket;  // alpha = 1/2 case: x ln x + (1-x) ln(1-x)
  Real tol;
  Real worst_err{0};
  Real min_complement{Real("1e-300")};
  std::shared_ptr<boost::math::quadrature::tanh_sinh<Real>> integ =
      std::make_shared<boost::math::quadrature::tanh_sinh<Real>>(20, Real("1e-300"));

  Real bracket(const Real& x) const {
    if (log_bracket) {
      Real r(0);
      if (x > 0) r += x * log(x);
      if (x < 1) r += (1 - x) * log(1 - x);
      return r;
    }
    return pow(x, alpha_prime) + pow(1 - x, alpha_prime) - 1;
  }

  Real half(int k1, int k2, int k3) {
    // integral over (0, 1/2]; boost positions the abscissas accurately near
    // the singular endpoint 0, so a unary integrand suffices
    Real e1 = k1 * alpha_prime - Real(3) / 2;
    Real e2 = k2 * alpha_prime - Real(3) / 2;
    auto f = [&](const Real& x) {
      if (x <= 0) return Real(0);
      Real v = pow(x, e1) * pow(1 - x, e2);
      Real b = bracket(x);
      for (int i = 0; i < k3; ++i) v *= b;
      return v;
    };
    Real err;
    Real val = integ->integrate(f, Real(0), Real(1) / 2, tol, &err);
    worst_err = std::max(worst_err, Real(abs(err * val)));
    // endpoint-truncation bias: contributions below the minimum complement
    Real mina = std::min(alpha_prime, Real(1));
    Real e_eff = e1 + k3 * mina;
    Real bias = pow(min_complement, e_eff + 1);
    if (log_bracket)
      for (int i = 0; i < k3; ++i) bias *= -log(min_complement);
    worst_err = std::max(worst_err, bias);
    return val;
  }

  Real J(int k1, int k2, int k3) {
    // integrability guard: k1 a' + k3 min(a',1) > 1/2 when k1 = 0, etc.
    Real mina = std::min(alpha_prime, Real(1));
    if (!log_bracket) {
      if (!(Real(k1) * alpha_prime + k3 * mina > Real(1) / 2) ||
          !(Real(k2) * alpha_prime + k3 * mina > Real(1) / 2))
        throw DomainError("J integral: non-integrable parameter combination");
    }
    return half(k1, k2, k3) + half(k2, k1, k3);
  }
};

}  // namespace

LimitMomentSeq mk_moments(const Real& alpha, int k_max, const Real& tol) {
  if (!(alpha > 0)) throw DomainError("mk_moments: alpha > 0 required");
  if (k_max > 12) throw DomainError("mk_moments: k_max <= 12");
  LimitMomentSeq out;
  out.kind = "mk";
  out.params = {{"alpha", alpha}};
  bool half_case = alpha == Real(1) / 2;
  Real ap = alpha + Real(1) / 2;  // equals 1 in the half case
  JIntegrator J{ap, half_case, tol / 100};

  Real tollfac = half_case ? 1 / sqrt_pi()
                           : tgamma_r(alpha - Real(1) / 2) / tgamma_r(alpha);
  std::vector<Real> mk(k_max + 1, Real(0));
  mk[0] = 1;
  // m_1 = 0 by construction of the centering
  for (int k = 2; k <= k_max; ++k) {
    Real pref = tgamma_r(k * ap - 1) / (4 * sqrt_pi() * tgamma_r(k * ap - Real(1) / 2));
    Real sum(0);
    for (int k1 = 0; k1 < k; ++k1) {
      for (int k2 = 0; k2 < k && k1 + k2 <= k; ++k2) {
        int k3 = k - k1 - k2;
        if (mk[k1] == 0 || mk[k2] == 0) continue;
        Real tf(1);
        for (int i = 0; i < k3; ++i) tf *= tollfac;
        sum += multinomial3(k, k1, k2, k3) * mk[k1] * mk[k2] * tf * J.J(k1, k2, k3);
      }
    }
    sum += 4 * sqrt_pi() * k * mk[k - 1];
    mk[k] = pref * sum;
  }
  out.values = mk;
  out.moments = mk;
  out.quadrature_tol = J.worst_err;
  return out;
}

ShapeCk0 shape_Ck0(int k_max) {
  ShapeCk0 out;
  out.sigma2 = 8 * (1 - ln2_v());
  out.recurrence.assign(k_max + 1, Real(0));
  out.closed_form.assign(k_max + 1, Real(0));
  out.gaussian_moments.assign(k_max + 1, Real(0));
  if (k_max >= 1) out.recurrence[1] = out.sigma2;
  for (int l = 2; l <= k_max; ++l) {
    Real s(0);
    for (int j = 1; j <= l - 1; ++j)
      s += binomial_real(2 * l, 2 * j) * out.recurrence[j] * out.recurrence[l - j];
    out.recurrence[l] = s / 4;
  }
  for (int k = 1; k <= k_max; ++k) {
    // (2k)! (2k-2)! / (2^k 2^{2k-2} k! (k-1)!) sigma^{2k}
    Real num = factorial_real(2 * k) * factorial_real(2 * k - 2);
    Real den = pow(Real(2), k) * pow(Real(2), 2 * k - 2) * factorial_real(k) *
               factorial_real(k - 1);
    out.closed_form[k] = num / den * pow(out.sigma2, k);
    out.gaussian_moments[k] =
        out.closed_form[k] * sqrt_pi() / tgamma_r(Real(k) - Real(1) / 2);
  }
  return out;
}

BstShapeConstants bst_shape_constants(long n_series) {
  BstShapeConstants out;
  out.series_truncation = n_series;

  // K(2) = 2 sum ln k/((k+1)(k+2)): head by direct summation, EM tail.
  {
    const long NK = 100000;
    Real head(0);
    for (long k = 2; k <= NK; ++k) head += log(Real(k)) / Real((k + 1) * (k + 2));
    auto f = [](const Real& x) { return log(x) / ((x + 1) * (x + 2)); };
    auto tail = em_tail_only(f, NK);
    out.K2 = 2 * (head + tail.value);
    out.K2_tail_bound = 2 * tail.tail_bound;
  }

  // centered second-moment sweep at c = K(2)
  auto spec = TollSpec::log_toll(2);
  auto sweep = rpm_moment_sweep<Real>(spec, 2, n_series, std::optional<Real>(out.K2));
  const auto& r = sweep.inhomog[2];

  Real V(0);
  for (long k = 1; k <= n_series; ++k) V += r[k] / Real((k + 1) * (k + 2));

  // Tail: write r_k = s_k + (a ln k + b)/k + rho_k with
  // s_k = -(H_k^2 - H_k^{(2)}) + V1 H_k + V2 the singular-part coefficients
  // of the inhomogeneous generating function.  The s-part tail telescopes in closed form,
  // the (a ln k + b)/k model is fitted on the last window and its tail
  // integrated; only rho_k = O(ln^2 k / k^2) is bounded by a majorant.
  Real g = euler_gamma();
  Real V1 = 2 * g;
  Real V2 = 4 - g * g - pi_v() * pi_v() / 2;
  long M = n_series + 1;
  Real HM(0), HM2(0);
  for (long k = 1; k <= M; ++k) {
    HM += Real(1) / k;
    HM2 += Real(1) / (Real(k) * k);
  }
  Real z2 = pi_v() * pi_v() / 6;
  Real A = (HM * HM + 2 * HM + 2) / (M + 1) + z2 - HM2 - Real(1) / (M + 1);
  Real B = HM2 / (M + 1) + z2 - HM2 - Real(1) / (M + 1);
  Real Cs = (HM + 1) / (M + 1);
  Real Ds = Real(1) / (M + 1);
  Real s_tail = -A + B + V1 * Cs + V2 * Ds;

  // least-squares fit of e_k * k against ln k over [N/3, N]
  Real fa(0), fb(0);
  Real rho_c(0);
  {
    Real Hk(0), Hk2(0);
    Real sx(0), sy(0), sxx(0), sxy(0);
    long cnt = 0;
    std::vector<std::pair<long, Real>> window;  // (k, e_k)
    for (long k = 1; k <= n_series; ++k) {
      Hk += Real(1) / k;
      Hk2 += Real(1) / (Real(k) * k);
      if (k >= n_series / 3) {
        Real sk = -(Hk * Hk - Hk2) + V1 * Hk + V2;
        Real ek = r[k] - sk;
        window.push_back({k, ek});
        Real x = log(Real(k)), y = ek * k;
        sx += x; sy += y; sxx += x * x; sxy += x * y;
        ++cnt;
      }
    }
    fa = (Real(cnt) * sxy - sx * sy) / (Real(cnt) * sxx - sx * sx);
    fb = (sy - fa * sx) / Real(cnt);
    for (auto& [k, ek] : window) {
      Real rho = ek - (fa * log(Real(k)) + fb) / k;
      Real lk = 1 + log(Real(k));
      Real cand = abs(rho) * Real(k) * k / (lk * lk);
      if (cand > rho_c) rho_c = cand;
    }
  }
  auto e_model_tail = em_tail_only(
      [&](const Real& x) { return (fa * log(x) + fb) / (x * (x + 1) * (x + 2)); }, n_series);
  // sum_{k>N} rho_c (1+ln k)^2/k^2 u_k <= rho_c int_N (1+ln x)^2 x^{-4} dx
  Real lN = 1 + log(Real(n_series));
  Real N3 = Real(n_series) * n_series * n_series;
  Real rho_tail_bound =
      rho_c * (lN * lN + 2 * lN / 3 + Real(2) / 9) / (3 * N3);

  out.V = V + s_tail + e_model_tail.value;
  out.V_tail_bound = rho_tail_bound + e_model_tail.tail_bound + 2 * out.K2_tail_bound;
  out.variance_slope = out.K2 * out.K2 + 2 * out.V;
  out.variance_constant = -(4 - pi_v() * pi_v() / 3);

  long keep = std::min<long>(5000, n_series);
  out.sigma_n2.resize(keep + 1);
  for (long n = 0; n <= keep; ++n)
    out.sigma_n2[n] = sweep.values[2][n] - sweep.values[1][n] * sweep.values[1][n];
  return out;
}

CatalanShapeConstants catalan_shape_constants(long N) {
  CatalanShapeConstants out;
  // head with the incremental Catalan weights q_n = beta_n/4^n
  Real q(1), head(0);
  for (long i = 1; i <= N; ++i) {
    q = q * Real(2 * i - 1) / Real(2 * (i + 1));
    head += log(Real(i)) * q;
  }
  auto f = [](const Real& x) {
    return log(x) * gamma_ratio(x, Real(1) / 2, Real(2)) / sqrt(pi_v());
  };
  auto tail = em_tail_only(f, N);
  out.C0 = head + tail.value;
  out.C0_tail_bound = tail.tail_bound;
  out.mean_sqrt_coeff = -2 * sqrt(pi_v());
  out.var_slope = 8 * (1 - ln2_v());
  return out;
}

bool hankel_psd(const std::vector<Real>& moments, int max_order, const Real& tol) {
  // leading principal minors of H_r = (mu_{i+j}), r <= max_order
  Real scale(1);
  for (const auto& m : moments) scale = std::max(scale, Real(abs(m)));
  for (int r = 0; r <= max_order; ++r) {
    if ((size_t)(2 * r) >= moments.size()) break;
    int n = r + 1;
    std::vector<std::vector<Real>> a(n, std::vector<Real>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a[i][j] = moments[i + j];
    // determinant by LU with partial pivoting
    Real det(1);
    for (int col = 0; col < n; ++col) {
      int piv = col;
      for (int row = col + 1; row < n; ++row)
        if (abs(a[row][col]) > abs(a[piv][col])) piv = row;
      if (piv != col) {
        std::swap(a[piv], a[col]);
        det = -det;
      }
      if (a[col][col] == 0) { det = 0; break; }
      det *= a[col][col];
      for (int row = col + 1; row < n; ++row) {
        Real f = a[row][col] / a[col][col];
        for (int j = col; j < n; ++j) a[row][j] -= f * a[col][j];
      }
    }
    if (det < -tol * scale) return false;
  }
  return true;
}

}  // namespace sst
