#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "indexdens/artin.hpp"

namespace indexdens {

// Degree model: [K_{n,n} : K] = phi(n) n^rank / C(gcd(n, n0)), with C defined
// on the divisors of n0.
struct DegreeModel {
  long rank = 1;
  std::uint64_t n0 = 1;
  std::map<std::uint64_t, std::uint64_t> C{{1, 1}};
  std::string description;
  std::string name;

  static const DegreeModel& builtin(const std::string& name);
  static const std::vector<std::string>& builtin_names();
  static DegreeModel parse_file(const std::string& path);
  static DegreeModel parse_text(const std::string& text, const std::string& name);

  // Throws std::invalid_argument describing the first violation found.
  void validate() const;

  std::uint64_t C_of(std::uint64_t g) const;
  mpz_class degree(std::uint64_t n) const;
  mpq_class dens_zero_exact(std::uint64_t d) const;  // dens(0, d) = 1/degree(d)
};

struct DensityOptions {
  mpfr_prec_t prec = 128;
  std::size_t b_terms = 0;  // 0: derive the product length from prec
};

struct DensityReport {
  Real density;
  std::uint64_t a = 0, d = 1, w = 1;
  long d_reduced = 1;
  bool exact = false;            // rational path (a = 0 mod d)
  mpq_class exact_value;
  double imaginary_residual = 0.0;
  // per character of modulus d': the coefficient multiplying B_chi, and B_chi
  std::vector<std::pair<std::string, Complex>> coefficients;
  std::vector<std::pair<std::string, Complex>> b_values;
};

// Natural density of primes with index == a (mod d) under the given model.
DensityReport dens(std::uint64_t a, std::uint64_t d, const DegreeModel& model,
                   const DensityOptions& opts = {});

// rho(a, d): the same quantity for the generic rank-1 model.
Real rho(std::uint64_t a, std::uint64_t d, const DensityOptions& opts = {});
mpq_class rho_zero_exact(std::uint64_t d);  // rho(0, d) = 1/(d phi(d))

struct OracleResult {
  Real value;
  double tail_bound;  // also folded into value's radius
};

// Brute-force double series sum_{t = a mod d, t <= T} sum_{v <= T} mu(v) / degree(v t),
// with a rigorous tail bound.  Independent of the character machinery.
OracleResult dens_series_oracle(std::uint64_t a, std::uint64_t d, const DegreeModel& model,
                                std::uint64_t T, mpfr_prec_t prec = 96);

// Partial sums rho_{delta, d1}(a, d) = sum_{t = a mod d} sum_{gcd(v, d1) = delta}
// mu(v)/(v t phi(v t)), both sums truncated at T.
OracleResult rho_partial(std::uint64_t a, std::uint64_t d, std::uint64_t delta,
                         std::uint64_t d1, std::uint64_t T, mpfr_prec_t prec = 96);

// Largest divisor of d supported on the primes of n0.
std::uint64_t gcd_infty(std::uint64_t d, std::uint64_t n0);

enum class Positivity { positive, unknown };
Positivity dens_positive(std::uint64_t a, std::uint64_t d, const DegreeModel& model);

}  // namespace indexdens
