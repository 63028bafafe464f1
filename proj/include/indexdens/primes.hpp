#pragma once

#include <cstdint>
#include <vector>

namespace indexdens {

std::vector<std::uint32_t> primes_up_to(std::uint32_t n);
std::vector<std::uint32_t> first_n_primes(std::size_t n);

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m);
std::uint64_t invmod(std::uint64_t a, std::uint64_t m);  // m prime (or gcd(a,m)=1 via Fermat when prime)

bool is_prime(std::uint64_t n);

struct PrimePower {
  std::uint64_t p;
  int e;
  bool operator==(const PrimePower&) const = default;
};

// Trial division + Miller-Rabin + Pollard-Brent rho.  Throws std::runtime_error
// if the rho stage fails to make progress (never observed for 64-bit inputs).
std::vector<PrimePower> factorize(std::uint64_t n);

std::uint64_t euler_phi(std::uint64_t n);
std::uint64_t squarefree_kernel(std::uint64_t n);
int mobius(std::uint64_t n);
std::vector<std::uint64_t> divisors(std::uint64_t n);  // sorted ascending

// Jacobi symbol (a/n), n odd positive.
int jacobi(std::int64_t a, std::uint64_t n);

// Square root of a modulo an odd prime p; a must be a quadratic residue.
std::uint64_t sqrt_mod(std::uint64_t a, std::uint64_t p);

// Order of g in F_p^* (g not divisible by p).
std::uint64_t mult_order_mod_p(std::uint64_t g, std::uint64_t p);

// Linear sieves for the series oracles.
std::vector<std::uint32_t> spf_table(std::uint32_t n);    // smallest prime factor, [0..n]
std::vector<std::int8_t> mobius_table(std::uint32_t n);   // [0..n]
std::vector<std::uint32_t> phi_table(std::uint32_t n);    // [0..n]

}  // namespace indexdens
