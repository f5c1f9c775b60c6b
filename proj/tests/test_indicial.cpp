#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sst/indicial.hpp"
#include "sst/special.hpp"

using namespace sst;

namespace {
double d(const Real& x) { return to_double(x); }
}

TEST_CASE("psi_eval known points") {
  CHECK(d(abs(psi_eval(2, Cplx(Real(2))))) == 0.0);
  CHECK(d(abs(psi_eval(3, Cplx(Real(-3))))) == 0.0);
  CHECK(d(psi_eval(4, Cplx(Real(0))).re) == doctest::Approx(-24.0));
  CHECK(d(psi_eval(4, Cplx(Real(0))).im) == 0.0);
}

TEST_CASE("psi_roots small m") {
  const auto& r2 = psi_roots(2);
  REQUIRE(r2.roots.size() == 1);
  CHECK(r2.roots[0].re == 2);
  CHECK(r2.roots[0].im == 0);
  CHECK_FALSE(r2.alpha.has_value());

  const auto& r3 = psi_roots(3);
  REQUIRE(r3.roots.size() == 2);
  CHECK(r3.roots[0].re == 2);
  CHECK(d(abs(r3.roots[1] - Cplx(Real(-3))))  < 1e-30);

  const auto& r4 = psi_roots(4);
  REQUIRE(r4.roots.size() == 3);
  CHECK(r4.roots[0].re == 2);
  // (-5 +- i sqrt 23)/2
  CHECK(d(abs(r4.roots[1] - Cplx(Real(-5) / 2, sqrt(Real(23)) / 2))) < 1e-30);
  CHECK(d(abs(r4.roots[2] - Cplx(Real(-5) / 2, -sqrt(Real(23)) / 2))) < 1e-30);
}

TEST_CASE("alpha_of values and the m=26/27 boundary") {
  CHECK(d(alpha_of(3)) == doctest::Approx(-3.0));
  CHECK(d(alpha_of(4)) == doctest::Approx(-2.5));
  CHECK(d(alpha_of(26)) < 1.5);
  CHECK(d(alpha_of(27)) >= 1.5);
  CHECK_THROWS(alpha_of(2));
}

TEST_CASE("root set invariants for 2 <= m <= 64") {
  for (int m = 2; m <= 64; ++m) {
    CAPTURE(m);
    const auto& data = psi_roots(m);
    REQUIRE((int)data.roots.size() == m - 1);
    // lambda_1 = 2 exactly
    CHECK(data.roots[0].re == 2);
    CHECK(data.roots[0].im == 0);
    // -m is a root iff m odd
    bool has_minus_m = false;
    for (const auto& z : data.roots)
      if (d(abs(z - Cplx(Real(-m)))) < 1e-20) has_minus_m = true;
    CHECK(has_minus_m == (m % 2 == 1));
    // conjugation closure
    for (const auto& z : data.roots) {
      bool found = false;
      for (const auto& w : data.roots)
        if (d(abs(w - conj(z))) < 1e-20) found = true;
      CHECK(found);
    }
    // sorted by nonincreasing real part
    for (size_t i = 0; i + 1 < data.roots.size(); ++i)
      CHECK(d(data.roots[i].re) >= d(data.roots[i + 1].re) - 1e-25);
    // residual below 1e-9 m!
    CHECK(d(data.max_residual / factorial_real(m)) < 1e-9);
    // distinctness
    for (size_t i = 0; i < data.roots.size(); ++i)
      for (size_t j = i + 1; j < data.roots.size(); ++j)
        CHECK(d(abs(data.roots[i] - data.roots[j])) > 1e-10);
  }
}

TEST_CASE("alpha increases with m over the checked range") {
  for (int m = 4; m <= 64; ++m) CHECK(d(alpha_of(m)) > d(alpha_of(m - 1)));
}

TEST_CASE("ett_coefficients examples") {
  // m=2: c_1 = b_0
  auto c2 = ett_coefficients(2, {Real(7) / 2});
  CHECK(d(abs(c2[0] - Cplx(Real(7) / 2))) < 1e-30);
  // all-zero initials give zero coefficients
  auto c4 = ett_coefficients(4, {Real(0), Real(0), Real(0)});
  for (auto& c : c4) CHECK(d(abs(c)) < 1e-35);
  // m=3, b=(0,1): c_1 = 1/5
  auto c3 = ett_coefficients(3, {Real(0), Real(1)});
  CHECK(d(abs(c3[0] - Cplx(Real(1) / 5))) < 1e-30);
  // c_1 must match the closed form (1/(H_m-1)) sum b_j/((j+1)(j+2))
  for (int m : {3, 5, 8}) {
    std::vector<Real> b;
    for (int j = 0; j <= m - 2; ++j) b.push_back(Real(j * j % 5));
    auto c = ett_coefficients(m, b);
    Real expect(0);
    for (int j = 0; j <= m - 2; ++j) expect += b[j] / Real((j + 1) * (j + 2));
    expect /= harmonic(m) - 1;
    CHECK(d(abs(c[0] - Cplx(expect))) < 1e-28);
  }
}

TEST_CASE("identity residuals tiny at computed roots") {
  for (int m = 3; m <= 15; ++m) {
    CAPTURE(m);
    precision::scoped_bits guard(200);
    auto res = identity_residuals(m, Cplx(Real(0)));
    CHECK(d(res.max_abs) < 1e-9);
    CHECK(d(res.psi_prime_two_rel) < 1e-12);
    if (m % 2 == 1) {
      CHECK(res.odd_first_order.has_value());
      CHECK(d(*res.odd_first_order) < 1e-10);
      CHECK(d(*res.odd_second_order) < 1e-10);
    }
  }
  // m=2: the power-sum identity is vacuous
  auto r2 = identity_residuals(2, Cplx(Real(0)));
  CHECK(d(r2.root_power_sums) == 0.0);
}

TEST_CASE("m=3 partial fractions at probe 0 against the closed form 1/psi(0)") {
  // both sides computable in closed form; psi_3(0) = -6
  auto res = identity_residuals(3, Cplx(Real(0)));
  CHECK(d(res.partial_fraction) < 1e-10);
  CHECK(d(abs(psi_eval(3, Cplx(Real(0))).re + Real(6))) < 1e-30);
}

TEST_CASE("fault injection: perturbing psi' breaks the identities") {
  auto res = identity_residuals(5, Cplx(Real(0)), Real(1) / 1000);
  CHECK(d(res.max_abs) > 1e-9);
}
