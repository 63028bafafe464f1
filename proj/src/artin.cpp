#include "indexdens/artin.hpp"

#include <omp.h>

#include <exception>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "indexdens/primes.hpp"

namespace indexdens {

namespace {

mpz_class mpz_pow(const mpz_class& b, unsigned long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

// chi rendered once per residue class; non-units flagged so the kernels can
// skip their (exactly 1) factors.
struct CharTable {
  std::vector<Complex> value;
  std::vector<char> unit;
  long d;

  CharTable(const DirichletCharacter& chi, mpfr_prec_t prec) : d(chi.modulus()) {
    value.reserve(d);
    unit.resize(d);
    for (long a = 0; a < d; ++a) {
      unit[a] = chi.group->is_unit(a);
      value.push_back(unit[a] ? chi.eval_complex(a, prec) : Complex::zero(prec));
    }
  }
};

// prod over the given primes of
//   (1 + chi(p)/(p(p^{r+1}-p^r-1))) (1 - chi(p)/p^{r+2}) (1 - chi(p)/p^{r+3})
Complex accel_product_range(const CharTable& tab, long r, const std::uint32_t* primes,
                            std::size_t count, mpfr_prec_t prec) {
  Complex prod = Complex::one(prec);
  Real one = Real::from_ui(1, prec);
  mpz_class p, pr1, den1, den2, den3;
  for (std::size_t i = 0; i < count; ++i) {
    std::uint32_t up = primes[i];
    if (!tab.unit[up % tab.d]) continue;
    const Complex& chip = tab.value[up % tab.d];
    p = up;
    pr1 = mpz_pow(p, static_cast<unsigned long>(r + 1));
    den2 = pr1 * p;                        // p^{r+2}
    den3 = den2 * p;                       // p^{r+3}
    den1 = (pr1 - pr1 / p - 1) * p;        // p (p^{r+1} - p^r - 1)
    Complex f1{one + chip.re.div_by_mpz(den1), chip.im.div_by_mpz(den1)};
    Complex f2{one - chip.re.div_by_mpz(den2), -chip.im.div_by_mpz(den2)};
    Complex f3{one - chip.re.div_by_mpz(den3), -chip.im.div_by_mpz(den3)};
    prod *= f1;
    prod *= f2;
    prod *= f3;
  }
  return prod;
}

Mag band_from_next_prime(std::uint64_t p_next, long r) {
  // delta = p_next^-(r+2); band = 2 delta + delta^2
  Mag delta = Mag::div_upper(Mag::from_ui(1), Mag::lower_abs_mpz(mpz_pow(p_next, r + 2)));
  return delta.mul_2exp(1) + delta * delta;
}

}  // namespace

Complex accel_product_reference(const DirichletCharacter& chi, long r,
                                const std::vector<std::uint32_t>& primes, mpfr_prec_t prec) {
  CharTable tab(chi, prec);
  return accel_product_range(tab, r, primes.data(), primes.size(), prec);
}

Complex accel_product_blocked(const DirichletCharacter& chi, long r,
                              const std::vector<std::uint32_t>& primes, mpfr_prec_t prec) {
  constexpr std::size_t kBlock = 4096;
  CharTable tab(chi, prec);
  const std::size_t nblocks = (primes.size() + kBlock - 1) / kBlock;
  std::vector<Complex> partial(nblocks, Complex(prec));
  std::exception_ptr err;

#pragma omp parallel for schedule(dynamic)
  for (std::size_t b = 0; b < nblocks; ++b) {
    try {
      std::size_t lo = b * kBlock;
      std::size_t len = std::min(kBlock, primes.size() - lo);
      partial[b] = accel_product_range(tab, r, primes.data() + lo, len, prec);
    } catch (...) {
#pragma omp critical
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);

  // fold in block order: result independent of the thread count
  Complex prod = Complex::one(prec);
  for (const Complex& c : partial) prod *= c;
  return prod;
}

BChiResult b_chi(const DirichletCharacter& chi, long r, std::size_t n_terms, mpfr_prec_t prec) {
  if (r < 1) throw std::invalid_argument("b_chi: require r >= 1");
  auto primes = first_n_primes(n_terms + 1);
  std::uint64_t p_next = primes.back();
  primes.pop_back();
  if (!((r == 1 && p_next >= 5) || (r >= 2 && p_next >= 3)))
    throw std::invalid_argument(
        "b_chi: acceleration requires p_{n+1} >= 5 for r = 1 (or >= 3 for r >= 2)");

  const mpfr_prec_t wp = prec + 32;
  Complex lambda = dirichlet_L(r + 1, chi, wp);
  lambda *= dirichlet_L(r + 2, chi, wp);
  lambda *= dirichlet_L(r + 3, chi, wp);
  lambda = lambda.scaled(artin_constant(r, wp));

  Complex value = lambda * accel_product_blocked(chi, r, primes, wp);
  Mag band = band_from_next_prime(p_next, r);
  value.add_error(value.abs_upper() * band);

  BChiResult res;
  res.value = Complex{value.re.rounded_to(prec), value.im.rounded_to(prec)};
  res.rank = r;
  res.n_terms = n_terms;
  res.e_bound = band.to_double();
  res.character = chi.label();
  return res;
}

Complex b_chi_raw(const DirichletCharacter& chi, long r, std::uint64_t prime_bound,
                  mpfr_prec_t prec) {
  if (r < 1) throw std::invalid_argument("b_chi_raw: require r >= 1");
  if (prime_bound < 2) throw std::invalid_argument("b_chi_raw: prime_bound too small");
  const mpfr_prec_t wp = prec + 32;
  CharTable tab(chi, wp);
  auto primes = primes_up_to(static_cast<std::uint32_t>(prime_bound));

  Complex prod = Complex::one(wp);
  Real one = Real::from_ui(1, wp);
  mpz_class p, den;
  for (std::uint32_t up : primes) {
    if (!tab.unit[up % tab.d]) {
      // chi(p) = 0: factor 1 - p/((p-1) p^{r+1}) = 1 - 1/((p-1) p^r), rational
      p = up;
      den = mpz_pow(p, static_cast<unsigned long>(r)) * (p - 1);
      prod = Complex{prod.re - prod.re.div_by_mpz(den), prod.im - prod.im.div_by_mpz(den)};
      continue;
    }
    const Complex& chip = tab.value[up % tab.d];
    p = up;
    // 1 + p (chi(p) - 1) / ((p-1)(p^{r+1} - chi(p)))
    Real pr = Real::from_mpz(p, wp);
    Complex num = Complex{chip.re - one, chip.im}.scaled(pr);
    Complex den_c{Real::from_mpz(mpz_pow(p, static_cast<unsigned long>(r + 1)), wp) - chip.re,
                  -chip.im};
    den_c = den_c.scaled(Real::from_mpz(p - 1, wp));
    Complex f = div(num, den_c);
    f.re += one;
    prod *= f;
  }
  // |prod_{p > B} f_p - 1| <= 2 sum_{n > B} 6 n^{-r-1} <= (24/r) B^-r
  Mag tail = Mag::div_upper(Mag::from_ui(24 / static_cast<std::uint64_t>(r) + 1),
                            Mag::lower_abs_mpz(mpz_pow(prime_bound, r)));
  prod.add_error(prod.abs_upper() * tail);
  return Complex{prod.re.rounded_to(prec), prod.im.rounded_to(prec)};
}

mpq_class b_chi_principal_exact(long d, long r) {
  mpq_class out = 1;
  for (const auto& [p, e] : factorize(static_cast<std::uint64_t>(d))) {
    mpz_class den = mpz_pow(mpz_class(static_cast<unsigned long>(p)), r) * (p - 1);
    out *= mpq_class(den - 1, den);
  }
  out.canonicalize();
  return out;
}

Complex b_chi_auto(const DirichletCharacter& chi, long r, mpfr_prec_t prec,
                   std::size_t n_override) {
  if (chi.is_principal() && n_override == 0) {
    Complex out(prec);
    out.re = Real::from_mpq(b_chi_principal_exact(chi.modulus(), r), prec);
    return out;
  }

  std::ostringstream key;
  key << chi.label() << "|r=" << r << "|prec=" << prec << "|n=" << n_override;
  static std::map<std::string, Complex> cache;
  static std::mutex mtx;
  {
    std::lock_guard<std::mutex> lock(mtx);
    if (auto it = cache.find(key.str()); it != cache.end()) return it->second;
  }

  std::size_t n = n_override;
  if (n == 0) {
    // want p_{n+1}^{r+2} >= 2^(prec+8), i.e. delta below the rounding level
    double want = std::exp2(static_cast<double>(prec + 8) / static_cast<double>(r + 2));
    want = std::min(want, 3.4e7);  // cap the sieve at ~2e6 primes
    auto ps = primes_up_to(static_cast<std::uint32_t>(want) + 64);
    n = ps.size() >= 8 ? ps.size() - 1 : 8;
  }
  Complex out = b_chi(chi, r, n, prec).value;
  std::lock_guard<std::mutex> lock(mtx);
  cache.emplace(key.str(), out);
  return out;
}

Complex c_chi(std::uint64_t N, std::uint64_t w, long r, const DirichletCharacter& chi,
              mpfr_prec_t prec) {
  if (N == 0 || w == 0) throw std::invalid_argument("c_chi: N and w must be positive");
  if (r < 1) throw std::invalid_argument("c_chi: require r >= 1");
  const mpfr_prec_t wp = prec + 32;

  Cyclotomic h = h_chi(chi, N);
  if (h.is_zero()) return Complex::zero(prec);

  Complex out = h.to_complex(wp);
  mpq_class pre(squarefree_kernel(N * w), mpz_pow(mpz_class(N), r + 1) * w);
  pre.canonicalize();
  out = out.scaled(Real::from_mpq(pre, wp));

  auto fn = factorize(N);
  for (const auto& [p, e] : fn) {
    mpz_class pz(static_cast<unsigned long>(p));
    mpz_class pr2 = mpz_pow(pz, r + 2);
    Complex den = chi.eval_complex(static_cast<long long>(p), wp);
    den.re += Real::from_mpz(pr2 - pr2 / p - p, wp);
    out = div(out.scaled(Real::from_mpz(pr2 / p, wp)), den);
  }
  for (const auto& [p, e] : factorize(w)) {
    bool in_n = false;
    for (const auto& [q, ee] : fn) in_n |= (q == p);
    if (in_n) continue;
    mpz_class pz(static_cast<unsigned long>(p));
    mpz_class pr2 = mpz_pow(pz, r + 2);
    Complex den = chi.eval_complex(static_cast<long long>(p), wp);
    den.re += Real::from_mpz(pr2 - pr2 / p - p, wp);
    out = div(out.scaled(Real::from_mpz(pr2 / p - 1, wp)), den);
  }
  return Complex{out.re.rounded_to(prec), out.im.rounded_to(prec)};
}

Complex cap_c_chi(std::uint64_t N, std::uint64_t w, long r, const DirichletCharacter& chi,
                  mpfr_prec_t prec) {
  Complex c = c_chi(N, w, r, chi, prec + 16);
  if (c.re.is_exact() && c.im.is_exact() && mpfr_zero_p(c.re.value()) &&
      mpfr_zero_p(c.im.value()))
    return Complex::zero(prec);
  Complex b = b_chi_auto(chi, r, prec + 16);
  Complex out = c * b;
  return Complex{out.re.rounded_to(prec), out.im.rounded_to(prec)};
}

}  // namespace indexdens
