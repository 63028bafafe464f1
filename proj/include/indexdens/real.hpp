#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>
#include <utility>

#include "indexdens/mag.hpp"

namespace indexdens {

// Ball arithmetic: an MPFR midpoint at a fixed working precision plus a Mag
// radius that rigorously bounds the distance to the true value.  Exact inputs
// get radius 0; every rounded MPFR operation adds one ulp to the radius, so
// is_exact() survives exact integer/dyadic computations.
class Real {
 public:
  explicit Real(mpfr_prec_t prec = 64) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  Real(const Real& o) : rad(o.rad) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Real(Real&& o) noexcept : rad(o.rad) {
    mpfr_init2(v_, 2);
    mpfr_swap(v_, o.v_);
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
      rad = o.rad;
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    mpfr_swap(v_, o.v_);
    rad = o.rad;
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
  const mpfr_t& value() const { return v_; }
  mpfr_t& value() { return v_; }

  static Real from_ui(unsigned long x, mpfr_prec_t prec) {
    Real r(prec);
    r.note(mpfr_set_ui(r.v_, x, MPFR_RNDN));
    return r;
  }
  static Real from_si(long x, mpfr_prec_t prec) {
    Real r(prec);
    r.note(mpfr_set_si(r.v_, x, MPFR_RNDN));
    return r;
  }
  static Real from_mpz(const mpz_class& x, mpfr_prec_t prec) {
    Real r(prec);
    r.note(mpfr_set_z(r.v_, x.get_mpz_t(), MPFR_RNDN));
    return r;
  }
  static Real from_mpq(const mpq_class& x, mpfr_prec_t prec) {
    Real r(prec);
    r.note(mpfr_set_q(r.v_, x.get_mpq_t(), MPFR_RNDN));
    return r;
  }
  static Real pi(mpfr_prec_t prec) {
    Real r(prec);
    r.note(mpfr_const_pi(r.v_, MPFR_RNDN));
    return r;
  }

  friend Real operator+(const Real& a, const Real& b) {
    Real r(join_prec(a, b));
    r.rad = a.rad + b.rad;
    r.note(mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN));
    return r;
  }
  friend Real operator-(const Real& a, const Real& b) {
    Real r(join_prec(a, b));
    r.rad = a.rad + b.rad;
    r.note(mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN));
    return r;
  }
  friend Real operator-(const Real& a) {
    Real r(a.prec());
    r.rad = a.rad;
    mpfr_neg(r.v_, a.v_, MPFR_RNDN);  // exact
    return r;
  }
  friend Real operator*(const Real& a, const Real& b) {
    Real r(join_prec(a, b));
    // |ab - a~b~| <= |a||b - b~| + |b~ + (b - b~)| |a - a~|
    r.rad = Mag::upper_abs(a.v_) * b.rad + (Mag::upper_abs(b.v_) + b.rad) * a.rad;
    r.note(mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN));
    return r;
  }
  Real& operator+=(const Real& o) { *this = *this + o; return *this; }
  Real& operator-=(const Real& o) { *this = *this - o; return *this; }
  Real& operator*=(const Real& o) { *this = *this * o; return *this; }

  // Throws if the denominator ball contains zero.
  friend Real div(const Real& a, const Real& b) {
    Mag lo = b.abs_lower();
    if (lo.is_zero()) throw std::runtime_error("Real division by ball containing zero");
    Real r(join_prec(a, b));
    r.note(mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN));
    r.rad = r.rad + Mag::div_upper(a.rad + Mag::upper_abs(r.v_) * b.rad, lo);
    return r;
  }

  // Division by a nonzero exact integer.
  Real div_by_mpz(const mpz_class& m) const {
    Real r(prec());
    r.rad = Mag::div_upper(rad, Mag::lower_abs_mpz(m));
    r.note(mpfr_div_z(r.v_, v_, m.get_mpz_t(), MPFR_RNDN));
    return r;
  }

  Real mul_by_mpq(const mpq_class& q) const {
    Real r(prec());
    Real f = from_mpq(q, prec());
    return *this * f;
  }

  static Real log(const Real& a) {
    Mag lo = a.abs_lower();
    if (lo.is_zero() || mpfr_sgn(a.v_) <= 0)
      throw std::runtime_error("Real log of ball touching (-inf, 0]");
    Real r(a.prec());
    r.note(mpfr_log(r.v_, a.v_, MPFR_RNDN));
    r.rad = r.rad + Mag::div_upper(a.rad, lo);
    return r;
  }

  static Real exp(const Real& a) {
    if (!(a.rad < Mag::pow2(-1))) throw std::runtime_error("Real exp: radius too large");
    Real r(a.prec());
    r.note(mpfr_exp(r.v_, a.v_, MPFR_RNDN));
    // |e^a - e^(a~)| <= e^(a~) (e^rad - 1) <= 2 val rad for rad <= 1/2
    r.rad = r.rad + Mag::upper_abs(r.v_) * a.rad.mul_2exp(1);
    return r;
  }

  void add_error(const Mag& m) { rad = rad + m; }

  Real rounded_to(mpfr_prec_t prec) const {
    Real r(prec);
    r.rad = rad;
    r.note(mpfr_set(r.v_, v_, MPFR_RNDN));
    return r;
  }

  Mag abs_upper() const { return Mag::upper_abs(v_) + rad; }
  Mag abs_lower() const {
    Mag lo = Mag::lower_abs(v_);
    if (lo <= rad) return Mag::zero();
    // lo - rad, rounded down: via subtraction at 64-bit mpfr with RNDD
    mpfr_t t, rr;
    mpfr_init2(t, 64);
    mpfr_init2(rr, 64);
    lo.to_mpfr(t);
    rad.to_mpfr(rr);
    mpfr_sub(t, t, rr, MPFR_RNDD);
    Mag out = mpfr_sgn(t) > 0 ? Mag::lower_abs(t) : Mag::zero();
    mpfr_clear(t);
    mpfr_clear(rr);
    return out;
  }
  bool is_exact() const { return rad.is_zero(); }
  bool contains_zero() const { return Mag::lower_abs(v_) <= rad; }

  // True only when containment/overlap is certain (conservative the other way).
  bool contains_mpq(const mpq_class& q) const {
    mpfr_t d;
    mpfr_init2(d, prec() + 64);
    mpfr_sub_q(d, v_, q.get_mpq_t(), MPFR_RNDA);  // RNDA: |d| >= exact difference
    Mag diff = mpfr_zero_p(d) ? Mag::zero() : Mag::upper_abs(d);
    mpfr_clear(d);
    return diff <= rad;
  }
  bool overlaps(const Real& o) const {
    mpfr_t d;
    mpfr_init2(d, std::max(prec(), o.prec()) + 32);
    mpfr_sub(d, v_, o.v_, MPFR_RNDA);
    Mag diff = mpfr_zero_p(d) ? Mag::zero() : Mag::upper_abs(d);
    mpfr_clear(d);
    return diff <= rad + o.rad;
  }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  double rad_to_double() const { return rad.to_double(); }

  Mag rad;

 private:
  static mpfr_prec_t join_prec(const Real& a, const Real& b) {
    return std::max(a.prec(), b.prec());
  }
  // Fold the ulp of the last rounding (ternary t) into the radius.
  void note(int t) {
    if (t != 0) rad = rad + Mag::pow2(mpfr_get_exp(v_) - mpfr_get_prec(v_));
  }
  mpfr_t v_;

  friend struct RealOps;
};

// Complex ball: pair of real balls (rectangular enclosure).
struct Complex {
  Real re, im;

  explicit Complex(mpfr_prec_t prec = 64) : re(prec), im(prec) {}
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

  static Complex one(mpfr_prec_t prec) { return {Real::from_ui(1, prec), Real(prec)}; }
  static Complex zero(mpfr_prec_t prec) { return Complex(prec); }

  friend Complex operator+(const Complex& a, const Complex& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend Complex operator-(const Complex& a, const Complex& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  Complex& operator+=(const Complex& o) { *this = *this + o; return *this; }
  Complex& operator*=(const Complex& o) { *this = *this * o; return *this; }

  Complex conj() const { return {re, -im}; }
  Complex scaled(const Real& s) const { return {re * s, im * s}; }
  Complex div_by_mpz(const mpz_class& m) const { return {re.div_by_mpz(m), im.div_by_mpz(m)}; }

  friend Complex div(const Complex& a, const Complex& b) {
    Real n = b.re * b.re + b.im * b.im;
    Complex num = a * b.conj();
    return {div(num.re, n), div(num.im, n)};
  }

  // L1 bound |re| + |im| >= |z|; fine for radius bookkeeping.
  Mag abs_upper() const { return re.abs_upper() + im.abs_upper(); }
  void add_error(const Mag& m) { re.add_error(m); im.add_error(m); }
  bool overlaps(const Complex& o) const { return re.overlaps(o.re) && im.overlaps(o.im); }
};

inline Mag ulp_of(const Real& x) {
  return mpfr_zero_p(x.value()) ? Mag::pow2(-x.prec())
                                : Mag::pow2(mpfr_get_exp(x.value()) - x.prec());
}

// cos/sin of 2*pi*k/m as balls; exact when m | 4.
void sin_cos_2pi(long k, long m, mpfr_prec_t prec, Real& cos_out, Real& sin_out);

// Decimal rendering: the longest prefix (up to max_digits fractional digits)
// whose digits are all guaranteed by the radius, i.e. radius < 10^-k / 2.
struct Decimal {
  std::string digits;      // fixed-point rendering of the midpoint
  int guaranteed;          // number of fractional digits shown
  std::string radius;      // short scientific rendering of the radius ("0" if exact)
};
Decimal format_real(const Real& x, int max_digits);

}  // namespace indexdens
