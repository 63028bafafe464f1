#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace indexdens {

// Non-negative magnitude bound man*2^exp with man either 0 or normalized to
// [2^30, 2^31).  Every operation rounds so that the represented value stays an
// upper bound (or a lower bound for the *_lower operations, which the caller
// must track).  Integer-only, so it is cheap enough for per-operation error
// accounting in hot loops.
struct Mag {
  std::uint64_t man = 0;
  std::int64_t exp = 0;

  bool is_zero() const { return man == 0; }

  static Mag zero() { return {}; }

  // 2^e exactly.
  static Mag pow2(std::int64_t e) { return Mag{std::uint64_t(1) << 30, e - 30}; }

  static Mag from_ui(std::uint64_t v) {
    Mag m{v, 0};
    m.normalize_up();
    return m;
  }

  static Mag from_double_upper(double x) {
    if (x <= 0) return zero();
    if (!std::isfinite(x)) throw std::runtime_error("Mag::from_double_upper: non-finite");
    int e;
    double d = std::frexp(x, &e);  // d in [0.5, 1)
    Mag m{static_cast<std::uint64_t>(d * 2147483648.0) + 1, static_cast<std::int64_t>(e) - 31};
    m.normalize_up();
    return m;
  }

  // Upper bound for |x|.  (x must be a regular number or zero.)
  static Mag upper_abs(const mpfr_t x) {
    if (mpfr_zero_p(x)) return zero();
    if (!mpfr_regular_p(x)) throw std::runtime_error("Mag::upper_abs: non-finite value");
    long e;
    double d = std::fabs(mpfr_get_d_2exp(&e, x, MPFR_RNDN));  // d in [0.5, 1)
    // +2 absorbs both the double rounding of d and the truncation below.
    Mag m{static_cast<std::uint64_t>(d * 2147483648.0) + 2, e - 31};
    m.normalize_up();
    return m;
  }

  // Lower bound for |z|, z a nonzero integer.  mpz_get_d_2exp truncates toward
  // zero, so the double mantissa is already a lower bound.
  static Mag lower_abs_mpz(const mpz_class& z) {
    if (z == 0) throw std::runtime_error("Mag::lower_abs_mpz: zero");
    long e;
    double d = std::fabs(mpz_get_d_2exp(&e, z.get_mpz_t()));
    return Mag{static_cast<std::uint64_t>(d * 2147483648.0), e - 31};
  }

  // Lower bound for |x| (0 if x == 0).
  static Mag lower_abs(const mpfr_t x) {
    if (mpfr_zero_p(x)) return zero();
    if (!mpfr_regular_p(x)) throw std::runtime_error("Mag::lower_abs: non-finite value");
    long e;
    double d = std::fabs(mpfr_get_d_2exp(&e, x, MPFR_RNDN));
    auto man = static_cast<std::uint64_t>(d * 2147483648.0);
    if (man < 2) return zero();
    man -= 2;
    Mag m{man, e - 31};
    if (man < (std::uint64_t(1) << 30)) {  // can happen only right at the boundary
      m.man = man << 1;
      m.exp -= 1;
    }
    return m;
  }

  friend Mag operator+(const Mag& a, const Mag& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const Mag& hi = (a.exp >= b.exp) ? a : b;
    const Mag& lo = (a.exp >= b.exp) ? b : a;
    std::int64_t diff = hi.exp - lo.exp;
    Mag r;
    if (diff > 32) {
      r = {hi.man + 1, hi.exp};  // lo rounds up to at most one ulp of hi
    } else {
      std::uint64_t shifted = (lo.man + (std::uint64_t(1) << diff) - 1) >> diff;
      r = {hi.man + shifted, hi.exp};
    }
    r.normalize_up();
    return r;
  }

  friend Mag operator*(const Mag& a, const Mag& b) {
    if (a.is_zero() || b.is_zero()) return zero();
    Mag r{a.man * b.man, a.exp + b.exp};  // <= 2^62, no overflow
    r.normalize_up();
    return r;
  }

  Mag mul_2exp(std::int64_t k) const {
    if (is_zero()) return zero();
    return {man, exp + k};
  }

  // Upper bound for a/b where b is itself a LOWER bound of the denominator.
  static Mag div_upper(const Mag& a, const Mag& b) {
    if (a.is_zero()) return zero();
    if (b.is_zero()) throw std::runtime_error("Mag::div_upper: zero denominator bound");
    std::uint64_t num = a.man << 31;
    Mag r{num / b.man + 1, a.exp - b.exp - 31};
    r.normalize_up();
    return r;
  }

  friend bool operator<(const Mag& a, const Mag& b) {
    if (a.is_zero()) return !b.is_zero();
    if (b.is_zero()) return false;
    if (a.exp != b.exp) return a.exp < b.exp;
    return a.man < b.man;
  }
  friend bool operator<=(const Mag& a, const Mag& b) { return !(b < a); }

  static Mag max(const Mag& a, const Mag& b) { return (a < b) ? b : a; }

  // For display and coarse comparisons only (may hit 0/inf outside double range).
  double to_double() const { return std::ldexp(static_cast<double>(man), static_cast<int>(exp)); }

  // rop := this, rounded up.
  void to_mpfr(mpfr_t rop) const {
    if (is_zero()) {
      mpfr_set_zero(rop, 1);
    } else {
      mpfr_set_ui_2exp(rop, man, exp, MPFR_RNDU);
    }
  }

 private:
  void normalize_up() {
    if (man == 0) return;
    while (man >= (std::uint64_t(1) << 31)) {
      man = (man >> 1) + (man & 1);
      exp += 1;
    }
    while (man < (std::uint64_t(1) << 30)) {
      man <<= 1;
      exp -= 1;
    }
  }
};

}  // namespace indexdens
