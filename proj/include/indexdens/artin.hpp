#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "indexdens/chargroup.hpp"
#include "indexdens/lfun.hpp"

namespace indexdens {

struct BChiResult {
  Complex value;
  long rank = 1;
  std::size_t n_terms = 0;
  double e_bound = 0.0;  // bound on |E - 1| already folded into the radius
  std::string character;
};

// Accelerated Euler product: value = Lambda_r * prod_{k<=n} P_{r,k}, with the
// unevaluated tail captured by |E - 1| <= 2 delta + delta^2,
// delta = p_{n+1}^{-(r+2)}.  Requires (r == 1 and p_{n+1} >= 5) or
// (r >= 2 and p_{n+1} >= 3).
BChiResult b_chi(const DirichletCharacter& chi, long r, std::size_t n_terms, mpfr_prec_t prec);

// Truncated plain Euler product over p <= prime_bound; crude tail estimate
// (24/r) * prime_bound^-r folded into the radius as a relative error.
Complex b_chi_raw(const DirichletCharacter& chi, long r, std::uint64_t prime_bound,
                  mpfr_prec_t prec);

// For principal chi mod d the product collapses to the rational
// prod_{p | d} (1 - 1/((p-1) p^r)).
mpq_class b_chi_principal_exact(long d, long r);

// B_chi(r) with n_terms derived from the precision (capped), principal
// characters short-circuited to the exact rational.  Process-wide cache.
Complex b_chi_auto(const DirichletCharacter& chi, long r, mpfr_prec_t prec,
                   std::size_t n_override = 0);

// c_chi(N, w, r): exact h_chi(N) times rational local factors,
//   h_chi(N) kappa(N w) / (N^{r+1} w)
//   * prod_{p|N} p^{r+1} / (p^{r+2} - p^{r+1} - p + chi(p))
//   * prod_{p|w, p∤N} (p^{r+1} - 1) / (p^{r+2} - p^{r+1} - p + chi(p)).
Complex c_chi(std::uint64_t N, std::uint64_t w, long r, const DirichletCharacter& chi,
              mpfr_prec_t prec);

// C_chi(N, w, r) = c_chi(N, w, r) * B_chi(r).
Complex cap_c_chi(std::uint64_t N, std::uint64_t w, long r, const DirichletCharacter& chi,
                  mpfr_prec_t prec);

// Product kernels over an explicit prime list (exposed for tests and the
// benchmark): a plain serial loop, and the fixed-block OpenMP version whose
// result is bit-identical for every thread count.
Complex accel_product_reference(const DirichletCharacter& chi, long r,
                                const std::vector<std::uint32_t>& primes, mpfr_prec_t prec);
Complex accel_product_blocked(const DirichletCharacter& chi, long r,
                              const std::vector<std::uint32_t>& primes, mpfr_prec_t prec);

}  // namespace indexdens
