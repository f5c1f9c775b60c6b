#include "sst/transfer.hpp"

#include <stdexcept>

#include "sst/exact_engine.hpp"
#include "sst/indicial.hpp"

namespace sst {

namespace {

thread_local Real t_imag_residual{0};

Real bhat(const TollSpec& spec, long n) {
  return n >= spec.m - 1 ? toll_value(spec, n) : Real(0);
}

// Continuous extension of the toll for tail integrals.
Real toll_at_real(const TollSpec& spec, const Real& x) {
  return std::visit(
      [&](const auto& fam) -> Real {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, ConstantToll>) {
          return fam.c;
        } else if constexpr (std::is_same_v<T, PowerToll>) {
          return pow(x, fam.alpha);
        } else if constexpr (std::is_same_v<T, LogToll>) {
          return log(x);
        } else if constexpr (std::is_same_v<T, LogBinomialToll>) {
          return lgamma_r(x + 1) - lgamma_r(x - spec.m + 2) - lgamma_r(Real(spec.m));
        } else {
          throw DomainError("toll family has no continuous extension");
        }
      },
      spec.family);
}

}  // namespace

std::vector<Real> ett_extract(const TollSpec& spec, long n_max) {
  const int m = spec.m;
  const auto& ind = psi_roots(m);
  auto c = ett_coefficients(m, spec.initial);
  Real mfact = factorial_real(m);

  // Representative roots: real ones once, conjugate pairs by their
  // upper-half member with weight two on the real part.
  struct Rep {
    Cplx lambda;
    Cplx c_over_one;   // c_j
    Cplx inv_psip;     // 1/psi'(lambda_j)
    bool doubled;
  };
  std::vector<Rep> reps;
  for (int j = 0; j < m - 1; ++j) {
    const Cplx& lam = ind.roots[j];
    if (lam.im < 0) continue;  // conjugate handled by the Im>0 partner
    bool dbl = lam.im > 0;
    reps.push_back({lam, c[j], Cplx(Real(1)) / ind.psi_prime[j], dbl});
  }

  std::vector<Real> a(n_max + 1, Real(0));
  std::vector<Cplx> h(reps.size(), Cplx(Real(1)));  // rising(lambda, n)/n!
  std::vector<Cplx> w(reps.size(), Cplx(Real(0)));  // w_n(lambda)
  Real max_imag(0);

  for (long n = 0; n <= n_max; ++n) {
    if (n > 0) {
      Real y_prev = bhat(spec, n - 1);
      for (size_t i = 0; i < reps.size(); ++i) {
        const Cplx& lam = reps[i].lambda;
        // h_n = h_{n-1} (lambda + n - 1)/n ; w_n = (1+(lambda-1)/n) w_{n-1} + y_{n-1}/n
        h[i] = h[i] * (lam + Cplx(Real(n - 1))) / Real(n);
        w[i] = (Cplx(Real(1)) + (lam - Cplx(Real(1))) / Real(n)) * w[i] + Cplx(y_prev / n);
      }
    }
    Cplx total(bhat(spec, n));
    for (size_t i = 0; i < reps.size(); ++i) {
      Cplx contrib = reps[i].c_over_one * h[i] + Cplx(mfact) * reps[i].inv_psip * w[i];
      if (reps[i].doubled) contrib = Cplx(2 * contrib.re, Real(0));
      total += contrib;
    }
    a[n] = total.re;
    Real im = abs(total.im);
    if (im > max_imag) max_imag = im;
  }
  t_imag_residual = max_imag;
  return a;
}

Real ett_last_imag_residual() { return t_imag_residual; }

SumResult k1_sum(const TollSpec& spec, long N) {
  const int m = spec.m;
  // initial-segment contribution from b_j = initial values, j <= m-2
  Real head(0);
  for (long j = 0; j <= m - 2; ++j)
    head += spec.initial_value(j) / Real((j + 1) * (j + 2));
  if (std::holds_alternative<ExplicitToll>(spec.family)) {
    const auto& vals = std::get<ExplicitToll>(spec.family).values;
    SumResult r;
    r.value = head;
    for (size_t i = 0; i < vals.size(); ++i) {
      long n = m - 1 + (long)i;
      r.value += vals[i] / Real((n + 1) * (n + 2));
    }
    r.tail_bound = Real(0);  // explicit tolls are finitely supported
    r.terms_used = (long)vals.size();
    return r;
  }
  auto f = [&](const Real& x) { return toll_at_real(spec, x) / ((x + 1) * (x + 2)); };
  auto r = em_tail_sum_quad(f, m - 1, N);
  r.value += head;
  return r;
}

AsymptoticPrediction att_predict(const TollSpec& spec, const TollClass& cls, long k1_terms) {
  const int m = spec.m;
  Real hm = harmonic(m);
  Real mfact = factorial_real(m);
  AsymptoticPrediction out;
  out.refined_remainder = m <= 26;

  switch (cls.kind) {
    case TollClass::Kind::SummableSmall: {
      auto k1 = k1_sum(spec, k1_terms);
      out.regime = "a";
      Real lead = k1.value / (hm - 1);
      out.terms.push_back({lead, Real(1), 0});
      out.constants = {{"K1", k1.value}, {"mu", lead}};
      out.k1_tail_bound = k1.tail_bound;
      break;
    }
    case TollClass::Kind::LinearPlusSmall: {
      // b_n = K2 (n+1) + h_n; K1-type sum over the residual h.
      Real K2 = cls.K2;
      auto hsum = [&](const Real& x) {
        return (toll_at_real(spec, x) - K2 * (x + 1)) / ((x + 1) * (x + 2));
      };
      Real head(0);
      for (long j = 0; j <= m - 2; ++j)
        head += (spec.initial_value(j) - K2 * (j + 1)) / Real((j + 1) * (j + 2));
      auto hs = em_tail_sum_quad(hsum, m - 1, k1_terms);
      Real K3 = hs.value + head +
                K2 * ((hm - 1) / 2 - 1 + (harmonic(m, 2) - 1) / (2 * (hm - 1)));
      out.regime = "b";
      // n H_n = n ln n + gamma n + O(1)
      out.terms.push_back({K2 / (hm - 1), Real(1), 1});
      out.terms.push_back({(K2 * euler_gamma() + K3) / (hm - 1), Real(1), 0});
      out.constants = {{"K2", K2}, {"K3", K3}};
      out.k1_tail_bound = hs.tail_bound;
      break;
    }
    case TollClass::Kind::PowerLarge: {
      if (!(cls.v > 1)) throw DomainError("ATT(c): requires v > 1");
      Real factor = Real(1) - mfact * tgamma_r(cls.v + 1) / tgamma_r(cls.v + m);
      out.regime = "c";
      out.terms.push_back({cls.K4 / factor, cls.v, 0});
      out.constants = {{"K4", cls.K4}, {"factor", Real(1) / factor}};
      break;
    }
    case TollClass::Kind::PowerSlowlyVarying: {
      // slowly-varying refinement: requires alpha < 1 + beta
      if (m > 2) {
        Real alpha = alpha_of(m);
        if (!(alpha < 1 + cls.beta))
          throw DomainError("slowly-varying refinement requires alpha < 1 + beta");
      }
      auto k1 = k1_sum(spec, k1_terms);
      Real rise = rising_real(Real(1) + cls.beta, m - 1);
      Real coeff = -rise / (mfact - rise);
      out.regime = "slowly-varying";
      out.terms.push_back({k1.value / (hm - 1), Real(1), 0});
      out.terms.push_back({coeff, cls.beta, 0});
      out.constants = {{"K1", k1.value}, {"beta_coeff", coeff}};
      out.k1_tail_bound = k1.tail_bound;
      break;
    }
  }
  std::sort(out.terms.begin(), out.terms.end(), [](const auto& x, const auto& y) {
    if (x.power != y.power) return x.power > y.power;
    return x.logpow > y.logpow;
  });
  return out;
}

ConverseEstimate converse_estimate(int m, const std::vector<Real>& a) {
  ConverseEstimate out;
  long n_max = (long)a.size() - 1;
  if (n_max < 8) throw DomainError("converse_estimate: need a longer sequence");
  // Richardson on a_n/n assuming a 1/n error term: K ~ 2 a_n/n - a_{n/2}/(n/2).
  Real r1 = a[n_max] / Real(n_max);
  Real r2 = a[n_max / 2] / Real(n_max / 2);
  out.K = 2 * r1 - r2;

  // Invert the basic recurrence to recover b_n, then accumulate partial sums.
  std::vector<Real> b(n_max + 1);
  for (long j = 0; j <= std::min<long>(m - 2, n_max); ++j) b[j] = a[j];
  {
    detail::BinomialPrefix<Real> prefix(m);
    Real cnm1(1);
    for (long n = m - 1; n <= n_max; ++n) {
      if (n > m - 1) cnm1 = cnm1 * Real(n) / Real(n - (m - 1));
      prefix.push(a[n - (m - 1)]);
      b[n] = a[n] - Real(m) * prefix.top() / cnm1;
    }
  }
  out.partial_sums.reserve(n_max + 1);
  Real acc(0);
  for (long n = 0; n <= n_max; ++n) {
    acc += b[n] / Real((n + 1) * (n + 2));
    out.partial_sums.push_back(acc);
  }
  return out;
}

}  // namespace sst
