#include "indexdens/lfun.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "indexdens/primes.hpp"

namespace indexdens {

namespace {

mpz_class mpz_pow(const mpz_class& b, unsigned long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

mpq_class mpq_pow(const mpq_class& b, unsigned long e) {
  return {mpz_pow(b.get_num(), e), mpz_pow(b.get_den(), e)};
}

// Upper-bound Mag for a non-negative rational.
Mag mag_of_mpq_upper(const mpq_class& q) {
  mpfr_t t;
  mpfr_init2(t, 64);
  mpfr_set_q(t, q.get_mpq_t(), MPFR_RNDU);
  Mag m = Mag::upper_abs(t);
  mpfr_clear(t);
  return m;
}

// q < 2^-target ?  (exact integer comparison)
bool mpq_below_pow2(const mpq_class& q, long target) {
  mpq_class a = abs(q);
  mpz_class lhs = a.get_num();
  mpz_mul_2exp(lhs.get_mpz_t(), lhs.get_mpz_t(), static_cast<mp_bitcnt_t>(target));
  return lhs < a.get_den();
}

}  // namespace

const mpq_class& bernoulli(unsigned n) {
  static std::vector<mpq_class> cache{1};
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  while (cache.size() <= n) {
    unsigned m = static_cast<unsigned>(cache.size());
    // B_m = -1/(m+1) * sum_{k<m} C(m+1, k) B_k
    mpq_class sum = 0;
    mpz_class bin;
    for (unsigned k = 0; k < m; ++k) {
      if (k > 1 && k % 2 == 1) continue;  // odd Bernoulli numbers vanish
      mpz_bin_uiui(bin.get_mpz_t(), m + 1, k);
      sum += mpq_class(bin) * cache[k];
    }
    sum /= -static_cast<long>(m + 1);
    sum.canonicalize();
    cache.push_back(sum);
  }
  return cache[n];
}

Real hurwitz_zeta(long s, const mpq_class& x, mpfr_prec_t prec) {
  if (s < 2) throw std::invalid_argument("hurwitz_zeta: require integer s >= 2");
  if (x <= 0 || x > 1) throw std::invalid_argument("hurwitz_zeta: require x in (0, 1]");
  const long target = prec + 10;
  const mpfr_prec_t wp = prec + 32;
  const mpz_class p = x.get_num(), q = x.get_den();
  const auto us = static_cast<unsigned long>(s);

  // Large s: the direct tail alone drops below 2^-target almost immediately.
  if (s >= target) {
    Real sum(wp);
    const mpz_class qs = mpz_pow(q, us);
    for (long k = 0; k < 4; ++k) {
      mpq_class term(qs, mpz_pow(p + k * q, us));
      term.canonicalize();
      sum += Real::from_mpq(term, wp);
    }
    // zeta(s, a) <= a^-s (1 + a/(s-1)), a = 4 + x
    mpq_class a(p + 4 * q, q);
    a.canonicalize();
    mpq_class tail = mpq_pow(1 / a, us) * (1 + a / (s - 1));
    sum.add_error(mag_of_mpq_upper(tail));
    return sum.rounded_to(prec);
  }

  long M = std::max<long>((35 * target) / 100 + 16, s);
  for (;; M *= 2) {
    // Correction terms must decrease; pick J adaptively, checking the bound
    // of the first omitted term (which also bounds the remainder).
    std::vector<mpq_class> corrections;
    mpq_class a(M * q + p, q);
    a.canonicalize();
    mpq_class inv_a = 1 / a;
    mpq_class bound_next;
    bool shrinking = true;
    mpq_class poch = s;              // (s)_1
    mpq_class apow = mpq_pow(inv_a, us + 1);  // a^-(s+1)
    mpz_class fact = 2;              // (2j)! at j = 1
    const mpq_class inv_a2 = inv_a * inv_a;
    mpq_class prev;
    for (long j = 1;; ++j) {
      // term_j = B_2j / (2j)! * (s)_{2j-1} * a^{-s-2j+1}
      mpq_class term = bernoulli(static_cast<unsigned>(2 * j)) / mpq_class(fact) * poch * apow;
      mpq_class tabs = abs(term);
      if (j > 1 && tabs >= prev) {
        shrinking = false;  // a too small for this many corrections; restart
        break;
      }
      prev = tabs;
      if (mpq_below_pow2(tabs, target)) {
        bound_next = tabs;
        break;
      }
      corrections.push_back(term);
      if (j > 2 * target) throw std::runtime_error("hurwitz_zeta: correction terms not converging");
      poch *= mpq_class((s + 2 * j - 1) * (s + 2 * j));
      apow *= inv_a2;
      fact *= (2 * j + 1) * (2 * j + 2);
    }
    if (!shrinking) continue;

    Real sum(wp);
    const mpz_class qs = mpz_pow(q, us);
    for (long k = 0; k < M; ++k) {
      mpq_class term(qs, mpz_pow(p + k * q, us));
      term.canonicalize();
      sum += Real::from_mpq(term, wp);
    }
    mpq_class em = mpq_pow(inv_a, us) / 2 + mpq_pow(inv_a, us - 1) / (s - 1);
    for (const auto& c : corrections) em += c;
    sum += Real::from_mpq(em, wp);
    sum.add_error(mag_of_mpq_upper(bound_next));
    return sum.rounded_to(prec);
  }
}

Real riemann_zeta(long s, mpfr_prec_t prec) {
  static std::map<std::pair<long, mpfr_prec_t>, Real> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto key = std::make_pair(s, prec);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  Real z = hurwitz_zeta(s, 1, prec);
  cache.emplace(key, z);
  return z;
}

Complex dirichlet_L(long s, const DirichletCharacter& chi, mpfr_prec_t prec) {
  if (s < 2) throw std::invalid_argument("dirichlet_L: require integer s >= 2");
  const long d = chi.modulus();
  const mpfr_prec_t wp = prec + 32;
  Complex sum = Complex::zero(wp);
  for (long a = 1; a <= d; ++a) {
    RootOfUnity u = chi.eval(a);
    if (u.zero) continue;
    mpq_class xa(a, d);
    xa.canonicalize();
    Real z = hurwitz_zeta(s, xa, wp);
    sum += u.to_complex(wp).scaled(z);
  }
  return sum.div_by_mpz(mpz_pow(d, static_cast<unsigned long>(s)));
}

Real prime_zeta(long s, mpfr_prec_t prec) {
  if (s < 2) throw std::invalid_argument("prime_zeta: require integer s >= 2");
  static std::map<std::pair<long, mpfr_prec_t>, Real> cache;
  static std::mutex mtx;
  {
    std::lock_guard<std::mutex> lock(mtx);
    if (auto it = cache.find({s, prec}); it != cache.end()) return it->second;
  }
  const long target = prec + 10;
  const mpfr_prec_t wp = prec + 32;
  const long K = target / s + 1;
  Real sum(wp);
  for (long k = 1; k <= K; ++k) {
    int mu = mobius(static_cast<std::uint64_t>(k));
    if (mu == 0) continue;
    Real lz = Real::log(riemann_zeta(k * s, wp));
    sum += lz.mul_by_mpq(mpq_class(mu, k));
  }
  // |sum_{k>K} mu(k)/k log zeta(ks)| <= 2^{-(K+1)s+3}
  sum.add_error(Mag::pow2(-(K + 1) * s + 3));
  Real out = sum.rounded_to(prec);
  std::lock_guard<std::mutex> lock(mtx);
  cache.emplace(std::make_pair(s, prec), out);
  return out;
}

Real artin_constant(long r, mpfr_prec_t prec) {
  if (r < 1) throw std::invalid_argument("artin_constant: require r >= 1");
  static std::map<std::pair<long, mpfr_prec_t>, Real> cache;
  static std::mutex mtx;
  {
    std::lock_guard<std::mutex> lock(mtx);
    if (auto it = cache.find({r, prec}); it != cache.end()) return it->second;
  }
  const long target = prec + 10;
  const mpfr_prec_t wp = prec + 32;

  // c_s = [t^s] -log(1 - t^{r+1}/(1-t)) = sum_k C(s-kr-1, k-1)/k, all >= 0.
  auto coeff = [r](long s) {
    mpq_class c = 0;
    mpz_class bin;
    for (long k = 1; k * (r + 1) <= s; ++k) {
      mpz_bin_uiui(bin.get_mpz_t(), static_cast<unsigned long>(s - k * r - 1),
                   static_cast<unsigned long>(k - 1));
      c += mpq_class(bin, k);
    }
    c.canonicalize();
    return c;
  };

  // Stop when the tail bound 2 (g(1/2) - sum_{s<=S} c_s 2^-s) is small enough,
  // g(t) = -log(1 - t^{r+1}/(1-t));  g(1/2) = -log(1 - 2^-r).
  Real g_half(wp);
  {
    mpq_class one_minus(mpz_class((mpz_class(1) << static_cast<unsigned long>(r)) - 1),
                        mpz_class(1) << static_cast<unsigned long>(r));
    one_minus.canonicalize();
    g_half = -Real::log(Real::from_mpq(one_minus, wp));
  }

  Real logA(wp);
  mpq_class partial = 0;
  mpq_class two_pow(1, 2);
  for (long i = 1; i < r + 1; ++i) two_pow /= 2;  // 2^-(r+1)
  long S = r;
  Mag tail;
  for (;;) {
    ++S;
    mpq_class cs = coeff(S);
    if (cs != 0) {
      // c_s grows like phi^s, so P(s) needs that many extra bits for the
      // scaled radius to stay near 2^-wp
      const mpfr_prec_t extra =
          static_cast<mpfr_prec_t>(mpz_sizeinbase(cs.get_num().get_mpz_t(), 2) + 2);
      logA -= prime_zeta(S, wp + extra).mul_by_mpq(cs);
      partial += cs * two_pow;
    }
    two_pow /= 2;
    if (S >= r + 4 && (S - r) % 8 == 0) {
      Real diff = g_half - Real::from_mpq(partial, wp);
      tail = diff.abs_upper().mul_2exp(1);
      if (tail < Mag::pow2(-target)) break;
    }
    if (S > 8 * target + 64) throw std::runtime_error("artin_constant: tail not converging");
  }
  logA.add_error(tail);
  Real out = Real::exp(logA).rounded_to(prec);
  std::lock_guard<std::mutex> lock(mtx);
  cache.emplace(std::make_pair(r, prec), out);
  return out;
}

}  // namespace indexdens
