#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sst/limit_laws.hpp"
#include "sst/transfer.hpp"

using namespace sst;

namespace {
double d(const Real& x) { return to_double(x); }
}

TEST_CASE("borderline_sigma2: m=2 equals 9pi/2 - 14 and all m in [2,26] positive") {
  Real expect = Real(9) / 2 * pi_v() - 14;
  CHECK(d(abs(borderline_sigma2(2) - expect) / expect) < 1e-12);
  // hand evaluation of the formula pieces at m=2
  Real byhand = (Real(9) / 4 * (pi_v() / 4 + 1) - 4) / ((harmonic(2) - 1) * Real(1) / 4);
  CHECK(d(abs(borderline_sigma2(2) - byhand)) < 1e-25);
  for (int m = 2; m <= 26; ++m) CHECK(d(borderline_sigma2(m)) > 0.0);
}

TEST_CASE("y_beta_moments: g1 values and signs") {
  // m=2, beta=2: g1 = 1/(1 - 2 Gamma(3)/Gamma(4)) = 3
  auto g = y_beta_moments(2, Real(2), 4);
  CHECK(d(abs(g.values[1] - Real(3))) < 1e-25);
  // 1/2 < beta < 1: g1 < 0 and equals -rising(1+b,m-1)/(m!-rising(1+b,m-1))
  for (double b : {0.6, 0.75, 0.9}) {
    for (int m : {2, 3, 4}) {
      Real bb(b);
      auto gg = y_beta_moments(m, bb, 1);
      CHECK(d(gg.values[1]) < 0.0);
      Real rise = rising_real(1 + bb, m - 1);
      Real expect = -rise / (factorial_real(m) - rise);
      CHECK(d(abs(gg.values[1] - expect)) < 1e-22);
    }
  }
  CHECK_THROWS_AS(y_beta_moments(2, Real(1), 2), DomainError);
  CHECK_THROWS_AS(y_beta_moments(2, Real(0.4), 2), DomainError);
  CHECK_THROWS_AS(y_beta_moments(20, Real(2), 8), DomainError);
}

TEST_CASE("y_beta_moments growth: Carleman-type boundedness to k = 12") {
  for (double b : {0.75, 2.0}) {
    auto g = y_beta_moments(2, Real(b), 12);
    // rho_k = (|g_k|/k!)^{1/k} k^{-(b+1/2)} stays bounded by its early values
    Real early(0);
    std::vector<Real> rho(13);
    for (int k = 1; k <= 12; ++k) {
      Real gammak = abs(g.values[k]) / factorial_real(k);
      rho[k] = pow(gammak, Real(1) / k) / pow(Real(k), Real(b) + Real(1) / 2);
      if (k <= 4) early = std::max(early, rho[k]);
    }
    for (int k = 5; k <= 12; ++k) CHECK(d(rho[k]) < 2.0 * d(early) + 1e-12);
  }
}

TEST_CASE("y_beta moments form a PSD Hankel (genuine law)") {
  auto g = y_beta_moments(2, Real(2), 8);
  CHECK(hankel_psd(g.values, 4));
}

TEST_CASE("catalan_Ck at alpha=1: C1=1, C2=5/2, E Y = sqrt(pi)") {
  auto ck = catalan_Ck(Real(1), 4);
  CHECK(d(abs(ck.values[1] - Real(1))) < 1e-25);
  CHECK(d(abs(ck.values[2] - Real(5) / 2)) < 1e-25);
  CHECK(d(abs(ck.moments[1] - sqrt(pi_v()))) < 1e-25);
  CHECK_THROWS_AS(catalan_Ck(Real(1) / 2, 2), DomainError);
}

TEST_CASE("sigma2_alpha landscape properties") {
  // near-1/2 continuity
  Real lim = sigma2_alpha_limit_half();
  CHECK(d(abs(sigma2_alpha(Real(499) / 1000) - lim)) < 1e-2);
  CHECK(d(abs(sigma2_alpha(Real(501) / 1000) - lim)) < 1e-2);
  CHECK_THROWS_AS(sigma2_alpha(Real(1) / 2), DomainError);
  // alpha -> infinity: sigma^2 ~ (sqrt2 - 1)/alpha
  Real s50 = sigma2_alpha(Real(50));
  Real asym = (sqrt(Real(2)) - 1) / 50;
  CHECK(d(abs(s50 - asym) / asym) < 0.10);
  // alpha -> 0: sigma^2 ~ 4(1 - ln 2) alpha.  The deviation is linear in
  // alpha and is 3.2% at alpha = 0.01, crossing 2% near alpha = 0.006.
  Real slope = 4 * (1 - ln2_v());
  Real dev001 = abs(sigma2_alpha(Real(1) / 100) / (Real(1) / 100) - slope) / slope;
  Real dev0005 = abs(sigma2_alpha(Real(5) / 1000) / (Real(5) / 1000) - slope) / slope;
  CHECK(d(dev001) < 0.04);
  CHECK(d(dev0005) < 0.02);
  CHECK(d(abs(dev0005 / dev001 - Real(1) / 2)) < 0.05);  // linear scaling
}

TEST_CASE("sigma2 landscape: maximizer and positivity") {
  auto ls = sigma2_landscape();
  CHECK(ls.all_positive);
  CHECK(d(abs(ls.argmax - Real(682607) / 1000000)) < 1e-3);
  CHECK(d(abs(ls.maxval - Real(198946) / 1000000)) < 1e-3);
}

TEST_CASE("airy and wiener recurrences") {
  auto rep = airy_wiener_check(10);
  CHECK(d(abs(rep.omega1 - Real(1) / 2)) < 1e-30);
  CHECK(d(abs(rep.a01 - Real(1))) < 1e-30);
  CHECK(d(rep.max_residual_airy) < 1e-10);
  CHECK(d(rep.max_residual_wiener) < 1e-10);
}

TEST_CASE("mk_moments: m1 = 0, two-route variance equality") {
  for (double a : {0.3, 0.75, 2.0}) {
    auto mk = mk_moments(Real(a), 4, Real(1e-12));
    CHECK(d(mk.values[1]) == 0.0);
    Real s2 = sigma2_alpha(Real(a));
    CAPTURE(a);
    CHECK(d(abs(mk.values[2] - s2)) < 1e-8);
    CHECK(hankel_psd(mk.values, 2));
  }
  auto mh = mk_moments(Real(1) / 2, 4, Real(1e-12));
  CHECK(d(abs(mh.values[2] - sigma2_alpha_limit_half())) < 1e-8);
}

TEST_CASE("sqrt k! law: alpha^{k/2} E Y^k at alpha = 200") {
  auto ck = catalan_Ck(Real(200), 4);
  for (int k = 1; k <= 4; ++k) {
    Real scaled = pow(Real(200), Real(k) / 2) * ck.moments[k];
    Real target = sqrt(factorial_real(k));
    CAPTURE(k);
    CHECK(d(abs(scaled - target) / target) < 0.05);
  }
}

TEST_CASE("shape_Ck0: base case, Gaussian identity, recurrence = closed form") {
  auto s = shape_Ck0(10);
  CHECK(d(abs(s.recurrence[1] - 8 * (1 - ln2_v()))) < 1e-30);
  for (int k = 1; k <= 10; ++k) {
    CAPTURE(k);
    CHECK(d(abs(s.recurrence[k] - s.closed_form[k]) / s.closed_form[k]) < 1e-12);
    // Gaussian even moments (2k)!/(2^k k!) sigma^{2k}
    Real gm = factorial_real(2 * k) / (pow(Real(2), k) * factorial_real(k)) *
              pow(s.sigma2, k);
    CHECK(d(abs(s.gaussian_moments[k] - gm) / gm) < 1e-12);
  }
  // k=2: C40 sqrt(pi)/Gamma(3/2) = 3 sigma^4
  CHECK(d(abs(s.gaussian_moments[2] - 3 * s.sigma2 * s.sigma2) / (3 * s.sigma2 * s.sigma2)) <
        1e-12);
}

TEST_CASE("V tail closed forms match direct summation") {
  // sum_{k>=M} H_k/((k+1)(k+2)) = (H_M+1)/(M+1) etc., checked numerically
  long M = 7;
  Real A(0), B(0), C(0), Hk(0), Hk2(0);
  for (long k = 1; k < M; ++k) {
    Hk += Real(1) / k;
    Hk2 += Real(1) / (Real(k) * k);
  }
  Real HM = Hk + Real(1) / M, HM2 = Hk2 + Real(1) / (Real(M) * M);
  Hk = HM; Hk2 = HM2;
  for (long k = M; k <= 3000000; ++k) {
    if (k > M) {
      Hk += Real(1) / k;
      Hk2 += Real(1) / (Real(k) * k);
    }
    Real u = Real(1) / ((k + 1) * (k + 2));
    A += Hk * Hk * u;
    B += Hk2 * u;
    C += Hk * u;
  }
  Real z2 = pi_v() * pi_v() / 6;
  CHECK(d(abs(C - (HM + 1) / (M + 1))) < 1e-5);
  CHECK(d(abs(B - (HM2 / (M + 1) + z2 - HM2 - Real(1) / (M + 1)))) < 1e-5);
  CHECK(d(abs(A - ((HM * HM + 2 * HM + 2) / (M + 1) + z2 - HM2 - Real(1) / (M + 1)))) < 1e-4);
}

TEST_CASE("bst_shape_constants: mean expansion at n = 2000..2100 and V stability") {
  auto c = bst_shape_constants(6000);
  // mean residual (mu_n - [K2(n+1) - ln n - 2]) * (-2n) in [0.9, 1.1]
  auto mu = rpm_mean(TollSpec::log_toll(2), 2100);
  for (long n = 2000; n <= 2100; n += 20) {
    Real resid = mu[n] - (c.K2 * (n + 1) - log(Real(n)) - 2);
    Real scaled = resid * Real(-2) * n;
    CAPTURE(n);
    CHECK(d(scaled) > 0.9);
    CHECK(d(scaled) < 1.1);
  }
  CHECK(d(c.K2_tail_bound) < 1e-10);
  // variance line at n = 5000 from the same sweep
  long n = 5000;
  Real lhs = c.sigma_n2[n] - c.variance_slope * (n + 1);
  CHECK(d(abs(lhs - c.variance_constant)) < 0.02);
  // V stable under a larger truncation, within reported bounds
  auto c2 = bst_shape_constants(12000);
  CHECK(d(abs(c.V - c2.V)) < d(c.V_tail_bound + c2.V_tail_bound) + 1e-9);
  CHECK(d(c2.V_tail_bound) < 1e-8);
}

TEST_CASE("V1, V2 match their defining combinations") {
  // V1 = -2 Gamma'(1) = 2 gamma;
  // V2 = Gamma''(1) + 4(Gamma'(1)(L_{-1}+1) - pi^2/6) + 2(2 + 2L_{-1} + L_{-1}^2)
  // with L_{-1} = gamma - 2 for m = 2, which collapses to 4 - gamma^2 - pi^2/2.
  Real g = euler_gamma();
  Real L = g - 2;
  Real v1_def = -2 * gamma_deriv(Real(1), 1);
  CHECK(d(abs(v1_def - 2 * g)) < 1e-12);
  Real v2_def = gamma_deriv(Real(1), 2) + 4 * (gamma_deriv(Real(1), 1) * (L + 1) -
                pi_v() * pi_v() / 6) + 2 * (2 + 2 * L + L * L);
  Real v2 = 4 - g * g - pi_v() * pi_v() / 2;
  CHECK(d(abs(v2_def - v2)) < 1e-10);
}

TEST_CASE("catalan_shape_constants") {
  auto c = catalan_shape_constants(100000);
  CHECK(d(c.C0_tail_bound) < 1e-10);
  CHECK(d(abs(c.mean_sqrt_coeff + 2 * sqrt(pi_v()))) == 0.0);
  CHECK(d(abs(c.var_slope - Real(245482) / 100000)) < 1e-5 * 3);
  // head-only value with integral-comparison bound brackets the EM value
  Real q(1), head(0);
  for (long i = 1; i <= 20000; ++i) {
    q = q * Real(2 * i - 1) / Real(2 * (i + 1));
    head += log(Real(i)) * q;
  }
  Real integral_bound = 2 * (log(Real(20000)) + 2) / sqrt(Real(20000) * pi_v());
  CHECK(d(abs(c.C0 - head)) < d(integral_bound));
}

TEST_CASE("rpm_clt_constants: degenerate toll, space requirement mean") {
  auto deg = rpm_clt_constants(TollSpec::degenerate(3, Real(2)), 400);
  CHECK(d(abs(deg.sigma2)) < 1e-25);
  // space requirement toll at m=3: mu = (1/2)/(H_3-1) = 3/5
  std::vector<Real> init{Real(0), Real(1)};
  auto sr = rpm_clt_constants(TollSpec::constant(3, Real(1), init), 400);
  CHECK(d(abs(sr.mu - Real(3) / 5)) < 1e-10);
  CHECK_THROWS_AS(rpm_clt_constants(TollSpec::log_toll(27), 100), DomainError);
}

TEST_CASE("clt sigma2 route agrees with the shape-functional variance slope") {
  // For m=2, toll ln n the small-toll CLT sigma^2 equals C1^2 + 2V.
  auto clt = rpm_clt_constants(TollSpec::log_toll(2), 4000);
  auto bst = bst_shape_constants(4000);
  CHECK(d(abs(clt.sigma2 - bst.variance_slope)) <
        d(clt.tail_bound + bst.V_tail_bound * 2) + 0.02);
}

TEST_CASE("hankel_psd sanity") {
  // standard normal raw moments
  std::vector<Real> normal{Real(1), Real(0), Real(1), Real(0), Real(3), Real(0), Real(15),
                           Real(0), Real(105)};
  CHECK(hankel_psd(normal, 4));
  // mu4 < mu2^2 is impossible
  std::vector<Real> bad{Real(1), Real(0), Real(1), Real(0), Real(0.5)};
  CHECK_FALSE(hankel_psd(bad, 2));
}

TEST_CASE("y_beta sampler: depth 0 returns the mean") {
  YBetaSampler s(2, 2.0, 0);
  auto unif = []() { return 0.37; };
  CHECK(s.sample(unif) == doctest::Approx(3.0));
  CHECK(s.bias_bound() > 0.0);
}
