#pragma once

#include <cstdint>
#include <vector>

#include "indexdens/real.hpp"

namespace indexdens {

// e^{2 pi i k/m}, or the zero value a character takes off its unit group.
// Canonical: 0 <= k < m, gcd(k, m) = 1 (so m = 1 exactly for the value 1).
struct RootOfUnity {
  bool zero = false;
  long k = 0;
  long m = 1;

  static RootOfUnity zero_value() { return {true, 0, 1}; }
  static RootOfUnity one() { return {false, 0, 1}; }
  static RootOfUnity make(long k, long m);

  RootOfUnity mul(const RootOfUnity& o) const;
  RootOfUnity pow(long e) const;
  RootOfUnity conj() const { return pow(-1); }
  bool is_one() const { return !zero && k == 0; }
  bool operator==(const RootOfUnity&) const = default;

  Complex to_complex(mpfr_prec_t prec) const;
};

// Coefficients of the m-th cyclotomic polynomial, constant term first,
// degree phi(m).  Cached; computed by exact division of x^m - 1.
const std::vector<long long>& cyclotomic_poly(long m);

// Element of Z[zeta_m], stored canonically reduced mod Phi_m (degree < phi(m)).
// Z[zeta_m] is an integral domain with free Z-basis 1..zeta^{phi(m)-1}, so
// equality and zero tests on coefficients are exact.
class Cyclotomic {
 public:
  explicit Cyclotomic(long m) : m_(m) {}

  static Cyclotomic integer(long m, long long c);
  static Cyclotomic root_power(long m, long k);  // zeta_m^k
  // Embed a root of unity of compatible order (u.m must divide m); zero maps to 0.
  static Cyclotomic embed(long m, const RootOfUnity& u);

  long order() const { return m_; }
  bool is_zero() const { return coef_.empty(); }
  const std::vector<long long>& coeffs() const { return coef_; }

  friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);
  Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
  Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }
  bool operator==(const Cyclotomic&) const = default;

  Complex to_complex(mpfr_prec_t prec) const;

 private:
  long m_;
  std::vector<long long> coef_;  // empty means zero; else trailing entry nonzero or size phi(m)

  void reduce();
  friend Cyclotomic mul_impl(const Cyclotomic&, const Cyclotomic&);
};

}  // namespace indexdens
