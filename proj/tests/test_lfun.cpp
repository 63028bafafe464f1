#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "indexdens/lfun.hpp"
#include "indexdens/primes.hpp"

using namespace indexdens;

namespace {

// direct partial sum of zeta(s, x) with the trivial integral tail bound
Real hurwitz_direct(long s, const mpq_class& x, long N, mpfr_prec_t prec) {
  Real acc(prec);
  for (long n = 0; n < N; ++n) {
    Real term = Real::from_mpq(mpq_class(1) / (mpq_class(n) + x), prec);
    Real t = term;
    for (long i = 1; i < s; ++i) t = t * term;
    acc = acc + t;
  }
  // tail < integral_{N-1}^inf (t+x)^-s dt = (N-1+x)^{1-s}/(s-1)
  mpq_class base = mpq_class(N - 1) + x;
  mpq_class tail(1);
  for (long i = 0; i + 1 < s; ++i) tail /= base;
  tail /= (s - 1);
  Real t_bound = Real::from_mpq(tail, 64);
  acc.add_error(t_bound.abs_upper());
  return acc;
}

}  // namespace

TEST_CASE("bernoulli numbers are the exact rationals") {
  CHECK(bernoulli(0) == 1);
  CHECK(bernoulli(1) == mpq_class(-1, 2));
  CHECK(bernoulli(2) == mpq_class(1, 6));
  CHECK(bernoulli(3) == 0);
  CHECK(bernoulli(4) == mpq_class(-1, 30));
  CHECK(bernoulli(8) == mpq_class(-1, 30));
  CHECK(bernoulli(10) == mpq_class(5, 66));
  CHECK(bernoulli(12) == mpq_class(-691, 2730));
  CHECK(bernoulli(20) == mpq_class(-174611, 330));
  // defining recurrence: sum_{j<n} C(n,j) B_j = 0 for n >= 2
  for (unsigned n = 2; n <= 40; ++n) {
    mpq_class s = 0;
    mpz_class binom;
    for (unsigned j = 0; j < n; ++j) {
      mpz_bin_uiui(binom.get_mpz_t(), n, j);
      s += mpq_class(binom) * bernoulli(j);
    }
    CHECK(s == 0);
  }
}

TEST_CASE("zeta at even integers hits the closed forms") {
  mpfr_prec_t prec = 256;
  Real pi = Real::pi(prec);
  Real z2 = riemann_zeta(2, prec);
  Real target2 = div(pi * pi, Real::from_ui(6, prec));
  CHECK(z2.overlaps(target2));
  CHECK(z2.rad_to_double() < 1e-70);

  Real z4 = riemann_zeta(4, prec);
  Real p2 = pi * pi;
  Real target4 = div(p2 * p2, Real::from_ui(90, prec));
  CHECK(z4.overlaps(target4));

  // zeta(3) against its first 28 published digits
  Real z3 = riemann_zeta(3, 128);
  Real a = Real::from_mpq(mpq_class("1202056903159594285399738161511") / mpq_class("1000000000000000000000000000000"), 128);
  Real diff = z3 - a;
  CHECK(diff.abs_upper().to_double() < 1e-30);
}

TEST_CASE("hurwitz zeta satisfies exact functional identities") {
  mpfr_prec_t prec = 192;
  for (long s : {2L, 3L, 5L, 8L}) {
    // zeta(s, 1) = zeta(s)
    CHECK(hurwitz_zeta(s, mpq_class(1), prec).overlaps(riemann_zeta(s, prec)));
    // zeta(s, 1/2) = (2^s - 1) zeta(s)
    Real lhs = hurwitz_zeta(s, mpq_class(1, 2), prec);
    Real rhs = riemann_zeta(s, prec).mul_by_mpq(mpq_class((mpz_class(1) << s) - 1));
    CHECK(lhs.overlaps(rhs));
    CHECK(lhs.rad_to_double() < 1e-45);
    // multiplication theorem: sum_j zeta(s, j/4) = 4^s zeta(s)
    Real sum(prec);
    for (long j = 1; j <= 4; ++j) sum = sum + hurwitz_zeta(s, mpq_class(j, 4), prec);
    Real rhs4 = riemann_zeta(s, prec).mul_by_mpq(mpq_class(mpz_class(1) << (2 * s)));
    CHECK(sum.overlaps(rhs4));
  }
  CHECK_THROWS(hurwitz_zeta(1, mpq_class(1), 64));
  CHECK_THROWS(hurwitz_zeta(2, mpq_class(0), 64));
  CHECK_THROWS(hurwitz_zeta(2, mpq_class(3, 2), 64));
}

TEST_CASE("hurwitz zeta encloses a direct partial sum") {
  for (long s : {2L, 3L}) {
    for (auto x : {mpq_class(1, 4), mpq_class(1, 3), mpq_class(2, 3), mpq_class(1)}) {
      Real fast = hurwitz_zeta(s, x, 128);
      Real slow = hurwitz_direct(s, x, 20000, 160);
      CHECK(fast.overlaps(slow));
    }
  }
}

TEST_CASE("catalan constant appears from hurwitz differences") {
  // G = (zeta(2, 1/4) - zeta(2, 3/4)) / 16
  mpfr_prec_t prec = 192;
  Real g = (hurwitz_zeta(2, mpq_class(1, 4), prec) - hurwitz_zeta(2, mpq_class(3, 4), prec))
               .div_by_mpz(16);
  mpq_class catalan = mpq_class("9159655941772190150546035149323841107") /
                      mpq_class("10000000000000000000000000000000000000");
  CHECK((g - Real::from_mpq(catalan, prec)).abs_upper().to_double() < 1e-36);
}

TEST_CASE("dirichlet L for principal characters reduces to zeta") {
  mpfr_prec_t prec = 160;
  for (long d : {2L, 5L, 6L, 12L}) {
    CharacterGroup G(d);
    const auto& chi0 = G.principal();
    for (long s : {2L, 4L}) {
      Complex L = dirichlet_L(s, chi0, prec);
      Real expect = riemann_zeta(s, prec);
      for (const auto& pp : factorize(static_cast<std::uint64_t>(d))) {
        mpz_class ps(1);
        for (long i = 0; i < s; ++i) ps *= pp.p;
        expect = expect.mul_by_mpq(mpq_class(ps - 1, ps));
      }
      CHECK(L.re.overlaps(expect));
      CHECK(L.im.contains_zero());
      CHECK(L.im.abs_upper().to_double() < 1e-40);
    }
  }
}

TEST_CASE("dirichlet L encloses long partial sums") {
  CharacterGroup G(5);
  const long s = 2;
  for (const auto& chi : G.all()) {
    Complex fast = dirichlet_L(s, chi, 128);
    std::vector<Complex> vals;
    for (long a = 0; a < 5; ++a) vals.push_back(chi.eval(a).to_complex(96));
    Complex slow = Complex::zero(96);
    for (long n = 1; n <= 200000; ++n) {
      if (n % 5 == 0) continue;
      mpz_class n2(n);
      n2 *= n;
      slow = slow + vals[static_cast<std::size_t>(n % 5)].div_by_mpz(n2);
    }
    // |tail| <= sum_{n>N} n^-2 < 1/N
    Mag tail = Mag::div_upper(Mag::from_ui(1), Mag::from_ui(200000));
    slow.add_error(tail);
    CHECK(fast.overlaps(slow));
    // conjugate character gives the conjugate value
    Complex conj_val = dirichlet_L(s, chi.conjugate(), 128);
    CHECK(conj_val.re.overlaps(fast.re));
    CHECK(conj_val.im.overlaps(-fast.im));
  }
}

TEST_CASE("prime zeta against brute sums over primes") {
  Real p2 = prime_zeta(2, 160);
  // frozen from an independent high-precision evaluation
  mpq_class ref = mpq_class("4522474200410654985065433648322479341732") /
                  mpq_class("10000000000000000000000000000000000000000");
  CHECK((p2 - Real::from_mpq(ref, 160)).abs_upper().to_double() < 1e-38);

  const std::uint32_t X = 1000000;
  auto ps = primes_up_to(X);
  for (long s : {2L, 3L}) {
    Real brute(128);
    for (std::uint32_t p : ps) {
      mpz_class pp(p);
      mpz_class den(1);
      for (long i = 0; i < s; ++i) den *= pp;
      brute = brute + Real::from_ui(1, 128).div_by_mpz(den);
    }
    // sum_{n>X} n^-s < X^{1-s}/(s-1) <= 1/X
    Mag tail = Mag::div_upper(Mag::from_ui(1), Mag::from_ui(X));
    brute.add_error(tail);
    CHECK(prime_zeta(s, 128).overlaps(brute));
  }
  CHECK_THROWS(prime_zeta(1, 64));
}

TEST_CASE("artin-type constants match their raw euler products") {
  for (long r : {1L, 2L, 3L}) {
    Real fast = artin_constant(r, 128);
    CHECK(fast.rad_to_double() < 1e-34);
    Real brute = Real::from_ui(1, 160);
    const std::uint32_t X = 300000;
    for (std::uint32_t p : primes_up_to(X)) {
      mpz_class pr(1);
      for (long i = 0; i < r; ++i) pr *= p;
      mpq_class f = mpq_class(1) - mpq_class(1, pr * (p - 1));
      brute = brute.mul_by_mpq(f);
    }
    // the omitted factors lie in (1 - t, 1) with t = sum_{p>X} 1/(p^r(p-1)) < 2/(r X^r)
    mpz_class Xr(1);
    for (long i = 0; i < r; ++i) Xr *= X;
    mpq_class t = mpq_class(2) / (Xr * r);
    Real band = brute;
    band.add_error(Real::from_mpq(t, 64).abs_upper());
    CHECK(fast.overlaps(band));
  }
  // frozen leading digits
  Real a1 = artin_constant(1, 192);
  mpq_class a1ref = mpq_class("37395581361920228805472805434641641511") /
                    mpq_class("100000000000000000000000000000000000000");
  CHECK((a1 - Real::from_mpq(a1ref, 192)).abs_upper().to_double() < 1e-36);
  Real a2 = artin_constant(2, 160);
  CHECK(a2.to_double() == doctest::Approx(0.69750135849636590328).epsilon(1e-15));
  // cross-precision runs must agree
  Real lowp = artin_constant(1, 64);
  CHECK(lowp.overlaps(a1.rounded_to(64)));
}
