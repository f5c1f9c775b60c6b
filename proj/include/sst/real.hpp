#pragma once

#include <boost/multiprecision/mpfr.hpp>
#include <boost/multiprecision/gmp.hpp>
#include <boost/math/constants/constants.hpp>
#include <cmath>
#include <string>

namespace sst {

namespace mp = boost::multiprecision;

// Working scalar: variable-precision MPFR float.  Default mantissa is 128
// bits; override through precision::set_bits (or the SST_PRECISION
// environment variable, handled by the CLI).
using Real = mp::number<mp::mpfr_float_backend<0>, mp::et_on>;

// Exact rationals, used by the brute-force oracles and for harmonic numbers.
using Rational = mp::mpq_rational;
using BigInt = mp::mpz_int;

namespace precision {

inline unsigned digits10_for_bits(unsigned bits) {
  return static_cast<unsigned>(bits * 0.30103) + 2;
}

// Header-side initializer so every binary linking any part of the library
// starts at the 128-bit default.
inline const bool default_precision_applied = [] {
  Real::default_precision(digits10_for_bits(128));
  return true;
}();

unsigned bits();
void set_bits(unsigned bits);

// Make the current global precision effective on this thread.  Worker
// threads start from the library default, not the main thread's setting.
void apply_to_this_thread();

// RAII bump for computations that need more working precision (root
// refinement, identity residuals at 200 bits).
class scoped_bits {
 public:
  explicit scoped_bits(unsigned bits);
  ~scoped_bits();
  scoped_bits(const scoped_bits&) = delete;
  scoped_bits& operator=(const scoped_bits&) = delete;

 private:
  unsigned saved_digits10_;
};

}  // namespace precision

inline Real pi_v() { return boost::math::constants::pi<Real>(); }
inline Real euler_gamma() { return boost::math::constants::euler<Real>(); }
inline Real ln2_v() { return boost::math::constants::ln_two<Real>(); }

// Disambiguated gamma wrappers (boost::math and boost::multiprecision both
// inject overloads into ADL scope).
inline Real tgamma_r(const Real& x) { return mp::tgamma(x); }
inline Real lgamma_r(const Real& x) { return mp::lgamma(x); }

inline double to_double(const Real& x) { return static_cast<double>(x); }

// Minimal complex-on-Real type.  std::complex is only specified for
// built-in floating point, so we carry our own.
struct Cplx {
  Real re{0};
  Real im{0};

  Cplx() = default;
  Cplx(Real r) : re(std::move(r)) {}
  Cplx(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  Cplx(double r) : re(r) {}
  Cplx(double r, double i) : re(r), im(i) {}

  friend Cplx operator+(const Cplx& a, const Cplx& b) { return {a.re + b.re, a.im + b.im}; }
  friend Cplx operator-(const Cplx& a, const Cplx& b) { return {a.re - b.re, a.im - b.im}; }
  friend Cplx operator-(const Cplx& a) { return {-a.re, -a.im}; }
  friend Cplx operator*(const Cplx& a, const Cplx& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Cplx operator*(const Real& s, const Cplx& a) { return {s * a.re, s * a.im}; }
  friend Cplx operator/(const Cplx& a, const Real& s) { return {a.re / s, a.im / s}; }
  friend Cplx operator/(const Cplx& a, const Cplx& b) {
    Real d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
  }
  Cplx& operator+=(const Cplx& b) { re += b.re; im += b.im; return *this; }
  Cplx& operator-=(const Cplx& b) { re -= b.re; im -= b.im; return *this; }
  Cplx& operator*=(const Cplx& b) { *this = *this * b; return *this; }

  friend Cplx conj(const Cplx& a) { return {a.re, -a.im}; }
  friend Real abs(const Cplx& a) { using mp::sqrt; return sqrt(a.re * a.re + a.im * a.im); }
  friend Real norm2(const Cplx& a) { return a.re * a.re + a.im * a.im; }
};

std::string to_string(const Real& x, unsigned digits = 20);

}  // namespace sst
