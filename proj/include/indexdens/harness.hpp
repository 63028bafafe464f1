#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace indexdens {

// K = Q or a real quadratic field Q(sqrt(D)), D >= 2 squarefree.  Arithmetic
// is done in the maximal order Z[omega], omega = (1+sqrt D)/2 for D = 1 mod 4
// and omega = sqrt D otherwise.
struct QuadraticField {
  bool rational = true;
  std::int64_t D = 0;
  bool omega_half = false;  // omega = (1 + sqrt D)/2
  std::int64_t disc = 1;

  static QuadraticField rationals();
  static QuadraticField real_quadratic(std::int64_t D);

  // minimal polynomial of omega: x^2 - trace x - unit_part
  std::int64_t omega_trace() const { return omega_half ? 1 : 0; }
  std::int64_t omega_norm_neg() const { return omega_half ? (D - 1) / 4 : D; }
};

// (A + B omega) / C in lowest terms (C > 0, gcd(A, B, C) = 1); B = 0 over Q.
struct FieldElement {
  mpz_class A, B, C;
  std::string text;
};

// Parse "+-*/", integer literals, parentheses and the token sqrt<D> over K.
FieldElement parse_element(const std::string& expr, const QuadraticField& K);

// Finitely generated subgroup of K^*.  Generators must be nonzero and not
// +/-1 (the only roots of unity in a real field); multiplicative independence
// is the caller's responsibility.
struct GroupSpec {
  std::vector<FieldElement> gens;
  long rank() const { return static_cast<long>(gens.size()); }
  void validate() const;
};

struct PrimeRecord {
  std::uint64_t p = 0;
  int f = 1;                     // residue degree
  bool ramified = false;
  std::uint64_t norm = 0;        // p^f
  std::uint64_t sqrt_d = 0;      // square root of D mod p attached to this prime (f = 1)
  std::uint64_t omega_root = 0;  // root of the minimal polynomial of omega mod p (f = 1)
};

// All primes of K with norm <= x, ordered by p and then omega_root.
std::vector<PrimeRecord> enumerate_primes(const QuadraticField& K, std::uint64_t x);

// Index [k(p)^* : <reductions of G>]; nullopt if the prime is ramified or some
// generator is not a unit at it.
std::optional<std::uint64_t> index_at_prime(const QuadraticField& K, const GroupSpec& G,
                                            const PrimeRecord& rec);

struct CountOptions {
  std::uint64_t x = 1000000;
  std::uint64_t modulus = 5;
  std::uint64_t histogram_cap = 100;
  bool include_skipped_in_total = false;  // alternative convention for the ratios
  int threads = 0;                        // 0: leave the OpenMP default
};

struct CountReport {
  std::uint64_t x = 0;
  std::uint64_t modulus = 0;
  std::vector<std::uint64_t> counts;  // counts[a]: index == a (mod modulus)
  std::uint64_t counted = 0;          // primes with a defined index
  std::uint64_t skipped = 0;          // ramified / non-unit generator
  std::map<std::uint64_t, std::uint64_t> histogram;  // index values <= histogram_cap
  bool include_skipped_in_total = false;

  std::vector<double> ratios() const;  // counts / (counted [+ skipped])
  bool operator==(const CountReport&) const = default;
};

// Blocked OpenMP tally (bit-identical for every thread count) and the plain
// serial loop kept as its reference.
CountReport count(const QuadraticField& K, const GroupSpec& G, const CountOptions& opts);
CountReport count_reference(const QuadraticField& K, const GroupSpec& G,
                            const CountOptions& opts);

}  // namespace indexdens
