#pragma once

#include <gmpxx.h>

#include "indexdens/chargroup.hpp"
#include "indexdens/real.hpp"

namespace indexdens {

// Exact Bernoulli numbers, cached.
const mpq_class& bernoulli(unsigned n);

// zeta(s, x) for integer s >= 2 and rational x in (0, 1].  Euler-Maclaurin
// with exact rational correction terms; the returned radius covers the
// truncation remainder (bounded by the first omitted term) and all rounding.
Real hurwitz_zeta(long s, const mpq_class& x, mpfr_prec_t prec);

Real riemann_zeta(long s, mpfr_prec_t prec);

// L(s, chi) for integer s >= 2, via d^-s sum_a chi(a) zeta(s, a/d).
Complex dirichlet_L(long s, const DirichletCharacter& chi, mpfr_prec_t prec);

// P(s) = sum over primes p of p^-s, s >= 2, via Moebius resummation of log zeta.
Real prime_zeta(long s, mpfr_prec_t prec);

// A_r = prod_p (1 - 1/(p^r (p - 1))), r >= 1, computed as
// exp(-sum_{s>r} c_s P(s)) with exact rational c_s and a rigorous tail bound.
Real artin_constant(long r, mpfr_prec_t prec);

}  // namespace indexdens
