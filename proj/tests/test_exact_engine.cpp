#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "sst/exact_engine.hpp"

using namespace sst;

namespace {
double d(const Real& x) { return to_double(x); }
double rel_err(const Real& got, const Real& want) {
  Real denom = abs(want) > 1 ? abs(want) : Real(1);
  return d(abs(got - want) / denom);
}
}  // namespace

TEST_CASE("rpm_mean hand-unrolled values") {
  // m=2, toll ln n: a_3 = ln 3 + (2/3) ln 2
  auto spec = TollSpec::log_toll(2);
  auto a = rpm_mean(spec, 3);
  CHECK(rel_err(a[3], log(Real(3)) + Real(2) / 3 * log(Real(2))) < 1e-30);

  // m=2, toll n with b=(0,1): a_n = n (node count under that normalization)
  auto nodes = TollSpec::power_int(2, 1);
  auto an = rpm_mean(nodes, 50);
  for (long n = 0; n <= 50; ++n) {
    // with b_0=0 the mean of internal path-ish toll n is not n; the exact
    // identity is for the degenerate toll below.  Here check recurrence sanity
    CHECK(d(an[n]) >= 0.0);
  }

  // degenerate toll t*min(m-1,n): a_n = t*n for every m
  for (int m : {2, 3, 5}) {
    auto dspec = TollSpec::degenerate(m, Real(2));
    auto da = rpm_mean(dspec, 60);
    for (long n = 0; n <= 60; ++n) CHECK(d(abs(da[n] - Real(2) * n)) < 1e-28);
  }
}

TEST_CASE("rpm_mean space requirement toll: m=2 gives exactly n") {
  // space requirement: b_0=0, b_j=1 (1<=j<=m-2), t_n = 1 -- for m=2 a_n = n.
  auto spec = TollSpec::constant_exact(2, Rational(1));
  auto a = rpm_mean_sweep<Rational>(spec, 64);
  for (long n = 0; n <= 64; ++n) CHECK(a[n] == Rational(n));
}

TEST_CASE("rpm moments: k=0 row is ones, degenerate variance vanishes") {
  auto spec = TollSpec::degenerate(3, Real(1.5));
  auto t = rpm_moments(spec, 2, 40);
  for (long n = 0; n <= 40; ++n) {
    CHECK(t.values[0][n] == 1);
    CHECK(d(abs(t.values[2][n] - t.values[1][n] * t.values[1][n])) < 1e-25);
  }
}

TEST_CASE("oracle equivalence RPM: rational path exact") {
  for (int m : {2, 3, 4}) {
    auto spec = TollSpec::power_int(m, 1);
    for (long n = 0; n <= 7; ++n) {
      auto bf = rpm_moments_bruteforce(spec, n, 3);
      REQUIRE(bf.exact.has_value());
      auto sweep = rpm_moment_sweep<Rational>(spec, 3, n);
      for (int k = 0; k <= 3; ++k) {
        CAPTURE(m); CAPTURE(n); CAPTURE(k);
        CHECK(sweep.values[k][n] == (*bf.exact)[k]);
      }
    }
  }
}

TEST_CASE("oracle equivalence RPM: float path for log toll") {
  for (int m : {2, 3, 4}) {
    auto spec = TollSpec::log_toll(m);
    for (long n = 2; n <= 7; ++n) {
      auto bf = rpm_moments_bruteforce(spec, n, 3);
      auto t = rpm_moments(spec, 3, n);
      for (int k = 1; k <= 3; ++k) {
        CAPTURE(m); CAPTURE(n); CAPTURE(k);
        CHECK(rel_err(t.values[k][n], bf.moments[k]) < 1e-12);
      }
    }
  }
}

TEST_CASE("m=3 n=4 RPM: 6 distinct trees each probability 1/6") {
  // All 4! permutations give functional values averaging over 6 equally
  // likely trees; the shape functional mean must equal the exact sweep.
  auto spec = TollSpec::log_binomial(3);
  auto bf = rpm_moments_bruteforce(spec, 4, 1);
  auto t = rpm_moments(spec, 1, 4);
  CHECK(rel_err(t.values[1][4], bf.moments[1]) < 1e-12);
}

TEST_CASE("catalan mean n=3 toll n is 29/5 and second moment 169/5") {
  auto spec = TollSpec::power_int(2, 1);
  auto sweep = catalan_moment_sweep<Rational>(spec, 2, 3);
  Rational q3 = sweep.q[3];
  CHECK(q3 == Rational(5, 64));
  CHECK(sweep.scaled[1][3] / q3 == Rational(29, 5));
  CHECK(sweep.scaled[2][3] / q3 == Rational(169, 5));
  auto bf = catalan_bruteforce(spec, 3, 2);
  REQUIRE(bf.exact.has_value());
  CHECK((*bf.exact)[1] == Rational(29, 5));
  CHECK((*bf.exact)[2] == Rational(169, 5));
}

TEST_CASE("catalan n=1: functional equals t_1 with zero initials") {
  auto spec = TollSpec::power_int(2, 1);
  auto bf = catalan_bruteforce(spec, 1, 2);
  CHECK((*bf.exact)[1] == Rational(1));
}

TEST_CASE("oracle equivalence catalan: toll n exact, toll ln n to 1e-12") {
  auto lin = TollSpec::power_int(2, 1);
  for (long n = 0; n <= 12; ++n) {
    auto bf = catalan_bruteforce(lin, n, 2);
    auto sweep = catalan_moment_sweep<Rational>(lin, 2, n);
    for (int k = 0; k <= 2; ++k) {
      CHECK(sweep.scaled[k][n] / sweep.q[n] == (*bf.exact)[k]);
    }
  }
  auto lg = TollSpec::log_toll(2);
  auto t = catalan_moments(lg, 2, 12);
  for (long n = 1; n <= 12; ++n) {
    auto bf = catalan_bruteforce(lg, n, 2);
    for (int k = 1; k <= 2; ++k) {
      CAPTURE(n); CAPTURE(k);
      CHECK(rel_err(t.values[k][n], bf.moments[k]) < 1e-12);
    }
  }
}

TEST_CASE("moment table invariants: Jensen and nonnegativity") {
  std::mt19937 rng(3);
  for (int m : {2, 3}) {
    for (int rep = 0; rep < 4; ++rep) {
      std::vector<Real> tolls;
      for (int i = 0; i < 30; ++i) tolls.emplace_back((double)(rng() % 7));
      auto spec = TollSpec::explicit_toll(m, tolls);
      auto t = rpm_moments(spec, 2, 25);
      for (long n = 0; n <= 25; ++n) {
        CHECK(d(t.values[1][n]) >= -1e-30);
        CHECK(d(t.values[2][n] - t.values[1][n] * t.values[1][n]) >= -1e-9);
      }
    }
  }
}

TEST_CASE("linearity: scaling toll by c scales k-th moment by c^k") {
  auto base = TollSpec::power_int(2, 1);
  std::vector<Real> init{Real(0)};
  auto scaled = TollSpec::constant(2, Real(0));  // placeholder, rebuilt below
  // c * t with matching initials: use explicit toll 3*n
  std::vector<Real> vals;
  for (long n = 1; n <= 30; ++n) vals.push_back(Real(3) * n);
  auto three = TollSpec::explicit_toll(2, vals);
  auto t1 = rpm_moments(base, 3, 30);
  auto t3 = rpm_moments(three, 3, 30);
  for (long n = 0; n <= 30; ++n)
    for (int k = 0; k <= 3; ++k)
      CHECK(rel_err(t3.values[k][n], pow(Real(3), k) * t1.values[k][n]) < 1e-25);
}

TEST_CASE("centered recurrence matches binomial transform for affine centering") {
  auto spec = TollSpec::log_toll(2);
  long N = 60;
  Real c = Real(17) / 10;
  std::vector<Real> cseq(N + 1);
  for (long n = 0; n <= N; ++n) cseq[n] = c * (n + 1);
  auto direct = rpm_moments(spec, 2, N, cseq);
  auto unc = rpm_moments(spec, 2, N);
  auto bt = center_by_binomial_transform(unc.values, cseq);
  for (long n = 0; n <= N; ++n)
    for (int k = 0; k <= 2; ++k) CHECK(d(abs(direct.values[k][n] - bt[k][n])) < 1e-25);

  // catalan, too
  auto cd = catalan_moments(spec, 2, N, cseq);
  auto cu = catalan_moments(spec, 2, N);
  auto cbt = center_by_binomial_transform(cu.values, cseq);
  for (long n = 0; n <= N; ++n)
    for (int k = 0; k <= 2; ++k) CHECK(d(abs(cd.values[k][n] - cbt[k][n])) < 1e-22);
}

TEST_CASE("non-affine centering goes through the binomial transform") {
  // independent oracle: average (f - c_n)^k over all permutations
  auto spec = TollSpec::log_toll(2);
  long N = 6;
  std::vector<Real> cseq(N + 1);
  for (long n = 0; n <= N; ++n) cseq[n] = Real(n) * n / 10;  // not affine in n+1
  auto t = rpm_moments(spec, 2, N, cseq);
  for (long n = 2; n <= N; ++n) {
    auto bf = rpm_moments_bruteforce(spec, n, 2);
    // shift brute-force raw moments by the centering
    Real m1 = bf.moments[1] - cseq[n];
    Real m2 = bf.moments[2] - 2 * cseq[n] * bf.moments[1] + cseq[n] * cseq[n];
    CAPTURE(n);
    CHECK(d(abs(t.values[1][n] - m1)) < 1e-25);
    CHECK(d(abs(t.values[2][n] - m2)) < 1e-25);
  }
  // an all-zero centering sequence is a no-op
  std::vector<Real> zeros(N + 1, Real(0));
  auto tz = rpm_moments(spec, 2, N, zeros);
  auto tu = rpm_moments(spec, 2, N);
  for (long n = 0; n <= N; ++n)
    CHECK(d(abs(tz.values[2][n] - tu.values[2][n])) == 0.0);
}

TEST_CASE("bruteforce capacity errors") {
  auto spec = TollSpec::power_int(2, 1);
  CHECK_THROWS_AS(rpm_moments_bruteforce(spec, 9, 1), DomainError);
  CHECK_THROWS_AS(catalan_bruteforce(spec, 13, 1), DomainError);
  CHECK_THROWS_AS(catalan_moments(TollSpec::power_int(3, 1), 1, 5), DomainError);
}

TEST_CASE("rpm m=2 n=0 bruteforce moment is b_0^k") {
  std::vector<Real> init{Real(2)};
  auto spec = TollSpec::constant_exact(2, Rational(1), init);
  auto bf = rpm_moments_bruteforce(spec, 0, 3);
  CHECK((*bf.exact)[1] == Rational(2));
  CHECK((*bf.exact)[2] == Rational(4));
  CHECK((*bf.exact)[3] == Rational(8));
}
