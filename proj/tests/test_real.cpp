#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <gmpxx.h>

#include <random>
#include <string>

#include "indexdens/real.hpp"

using namespace indexdens;

namespace {

mpq_class mag_q(const Mag& m) {
  mpq_class v(static_cast<unsigned long>(m.man));
  if (m.exp >= 0) {
    v *= mpz_class(1) << static_cast<unsigned long>(m.exp);
  } else {
    v /= mpz_class(1) << static_cast<unsigned long>(-m.exp);
  }
  return v;
}

mpq_class rand_q(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-1000000, 1000000);
  std::uniform_int_distribution<long> den(1, 1000000);
  return mpq_class(num(rng), den(rng));
}

// parse the fixed-point output of format_real back into a rational
mpq_class parse_decimal(const std::string& s) {
  bool neg = !s.empty() && s[0] == '-';
  std::string t = neg ? s.substr(1) : s;
  const auto dot = t.find('.');
  std::string digits = (dot == std::string::npos) ? t : t.substr(0, dot) + t.substr(dot + 1);
  const unsigned long frac = (dot == std::string::npos) ? 0 : t.size() - dot - 1;
  mpq_class q(mpz_class(digits, 10), 1);
  for (unsigned long i = 0; i < frac; ++i) q /= 10;
  q.canonicalize();
  return neg ? mpq_class(-q) : q;
}

}  // namespace

TEST_CASE("mag invariants and upper-bound arithmetic") {
  CHECK(Mag::zero().is_zero());
  CHECK(mag_q(Mag::pow2(5)) == 32);
  CHECK(mag_q(Mag::pow2(-3)) == mpq_class(1, 8));
  CHECK(mag_q(Mag::from_ui(12345)) >= 12345);

  std::mt19937_64 rng(12345);
  std::uniform_int_distribution<std::uint64_t> man_d(1, ~std::uint64_t(0) >> 20);
  std::uniform_int_distribution<std::int64_t> exp_d(-80, 80);
  for (int i = 0; i < 5000; ++i) {
    Mag a = Mag::from_ui(man_d(rng)).mul_2exp(exp_d(rng));
    Mag b = Mag::from_ui(man_d(rng)).mul_2exp(exp_d(rng));
    // normalized mantissas
    CHECK(a.man >= (std::uint64_t(1) << 30));
    CHECK(a.man < (std::uint64_t(1) << 31));
    mpq_class qa = mag_q(a), qb = mag_q(b);
    CHECK(mag_q(a + b) >= qa + qb);
    CHECK(mag_q(a * b) >= qa * qb);
    CHECK(mag_q(Mag::div_upper(a, b)) >= qa / qb);
    CHECK(mag_q(Mag::max(a, b)) >= qa);
    CHECK(mag_q(Mag::max(a, b)) >= qb);
    CHECK((a < b) == (qa < qb));
    // bounded sloppiness: at most a few ulps
    CHECK(mag_q(a + b) <= (qa + qb) * mpq_class(1 << 20, (1 << 20) - 8));
    CHECK(mag_q(a * b) <= qa * qb * mpq_class(1 << 20, (1 << 20) - 8));
  }
}

TEST_CASE("mag conversions bound doubles and mpz") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> xd(1e-30, 1e30);
  for (int i = 0; i < 2000; ++i) {
    double x = xd(rng);
    CHECK(mag_q(Mag::from_double_upper(x)) >= mpq_class(x));
  }
  CHECK(Mag::from_double_upper(0.0).is_zero());
  CHECK_THROWS(Mag::from_double_upper(1.0 / 0.0));

  gmp_randclass gr(gmp_randinit_default);
  gr.seed(7);
  for (int i = 0; i < 2000; ++i) {
    mpz_class z = gr.get_z_bits(1 + i % 200);
    if (z == 0) continue;
    CHECK(mag_q(Mag::lower_abs_mpz(z)) <= z);
  }
}

TEST_CASE("real exactness is preserved through exact operations") {
  Real a = Real::from_ui(7, 64);
  Real b = Real::from_si(-3, 64);
  CHECK(a.is_exact());
  CHECK((a + b).is_exact());
  CHECK((a * b).is_exact());
  CHECK((a - b).to_double() == 10.0);
  Real third = Real::from_mpq(mpq_class(1, 3), 64);
  CHECK(!third.is_exact());
  CHECK(third.contains_mpq(mpq_class(1, 3)));
  Real dyadic = Real::from_mpq(mpq_class(5, 16), 64);
  CHECK(dyadic.is_exact());
}

TEST_CASE("ball ops contain the exact rational result") {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 2000; ++i) {
    mpq_class qa = rand_q(rng), qb = rand_q(rng);
    Real a = Real::from_mpq(qa, 80), b = Real::from_mpq(qb, 80);
    CHECK((a + b).contains_mpq(qa + qb));
    CHECK((a - b).contains_mpq(qa - qb));
    CHECK((a * b).contains_mpq(qa * qb));
    if (qb != 0) {
      Real q = div(a, b);
      CHECK(q.contains_mpq(qa / qb));
    }
    mpz_class m = qb.get_num();
    if (m != 0) CHECK(a.div_by_mpz(m).contains_mpq(qa / m));
    CHECK(a.mul_by_mpq(qb).contains_mpq(qa * qb));
  }
}

TEST_CASE("division by a ball containing zero throws") {
  Real a = Real::from_ui(1, 64);
  Real z = Real::from_mpq(mpq_class(1, 1000), 64);
  z.add_error(Mag::from_ui(1));
  CHECK(z.contains_zero());
  CHECK_THROWS_AS(div(a, z), std::runtime_error);
  CHECK_THROWS_AS(Real::log(z), std::runtime_error);
  Real neg = Real::from_si(-2, 64);
  CHECK_THROWS_AS(Real::log(neg), std::runtime_error);
  Real wide = Real::from_ui(1, 64);
  wide.add_error(Mag::from_ui(1));
  CHECK_THROWS_AS(Real::exp(wide), std::runtime_error);
}

TEST_CASE("log and exp enclose") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> num(1, 4000);
  for (int i = 0; i < 300; ++i) {
    mpq_class q(num(rng), num(rng));
    Real x = Real::from_mpq(q, 128);
    Real back = Real::exp(Real::log(x));
    CHECK(back.contains_mpq(q));
    CHECK(back.rad_to_double() < 1e-30);
  }
  // exp(0) and log(1) are exact-ish small balls around the right values
  CHECK(Real::exp(Real(64)).contains_mpq(1));
  CHECK(Real::log(Real::from_ui(1, 64)).contains_mpq(0));
}

TEST_CASE("rounding and error injection keep containment") {
  mpq_class q(22, 7);
  Real x = Real::from_mpq(q, 200);
  Real y = x.rounded_to(48);
  CHECK(y.prec() == 48);
  CHECK(y.contains_mpq(q));
  Mag before = y.rad;
  y.add_error(Mag::pow2(-10));
  CHECK(before < y.rad);
  CHECK(y.contains_mpq(q + mpq_class(1, 2048)));
}

TEST_CASE("abs bounds straddle the true value") {
  std::mt19937_64 rng(77);
  for (int i = 0; i < 1000; ++i) {
    mpq_class q = rand_q(rng);
    Real x = Real::from_mpq(q, 96);
    x.add_error(Mag::pow2(-40));
    mpq_class aq = abs(q);
    CHECK(mag_q(x.abs_upper()) >= aq);
    Mag lo = x.abs_lower();
    if (!lo.is_zero()) CHECK(mag_q(lo) <= aq);
  }
  Real zero_ball(64);
  zero_ball.add_error(Mag::pow2(-5));
  CHECK(zero_ball.contains_zero());
  CHECK(zero_ball.abs_lower().is_zero());
}

TEST_CASE("overlaps is symmetric and certain") {
  Real a = Real::from_mpq(mpq_class(1, 3), 100);
  Real b = Real::from_mpq(mpq_class(1, 3), 60);
  CHECK(a.overlaps(b));
  CHECK(b.overlaps(a));
  Real c = Real::from_ui(2, 60);
  CHECK(!a.overlaps(c));
}

TEST_CASE("sin_cos_2pi: exact quadrants and the circle identity") {
  Real c(64), s(64);
  sin_cos_2pi(0, 1, 64, c, s);
  CHECK(c.is_exact());
  CHECK(c.to_double() == 1.0);
  CHECK(s.to_double() == 0.0);
  sin_cos_2pi(1, 4, 64, c, s);
  CHECK(c.to_double() == 0.0);
  CHECK(s.to_double() == 1.0);
  sin_cos_2pi(1, 2, 64, c, s);
  CHECK(c.to_double() == -1.0);
  sin_cos_2pi(3, 4, 64, c, s);
  CHECK(s.to_double() == -1.0);

  std::mt19937_64 rng(31);
  std::uniform_int_distribution<long> md(1, 600);
  for (int i = 0; i < 400; ++i) {
    long m = md(rng);
    long k = static_cast<long>(rng() % static_cast<std::uint64_t>(m));
    sin_cos_2pi(k, m, 128, c, s);
    Real one = c * c + s * s;
    CHECK(one.contains_mpq(1));
    double ang = 2.0 * 3.14159265358979323846 * static_cast<double>(k) / static_cast<double>(m);
    CHECK(std::abs(c.to_double() - std::cos(ang)) < 1e-9);
    CHECK(std::abs(s.to_double() - std::sin(ang)) < 1e-9);
  }
}

TEST_CASE("complex balls follow exact rational complex arithmetic") {
  std::mt19937_64 rng(404);
  for (int i = 0; i < 800; ++i) {
    mpq_class ar = rand_q(rng), ai = rand_q(rng), br = rand_q(rng), bi = rand_q(rng);
    Complex a(Real::from_mpq(ar, 96), Real::from_mpq(ai, 96));
    Complex b(Real::from_mpq(br, 96), Real::from_mpq(bi, 96));
    Complex p = a * b;
    CHECK(p.re.contains_mpq(ar * br - ai * bi));
    CHECK(p.im.contains_mpq(ar * bi + ai * br));
    Complex sum = a + b;
    CHECK(sum.re.contains_mpq(ar + br));
    if (br != 0 || bi != 0) {
      mpq_class n = br * br + bi * bi;
      Complex q = div(a, b);
      CHECK(q.re.contains_mpq((ar * br + ai * bi) / n));
      CHECK(q.im.contains_mpq((ai * br - ar * bi) / n));
    }
    CHECK(a.conj().im.contains_mpq(-ai));
    // L1 norm dominates L2
    mpq_class n2 = ar * ar + ai * ai;
    mpq_class u = mag_q(a.abs_upper());
    CHECK(u * u >= n2);
  }
}

TEST_CASE("format_real prints only guaranteed digits") {
  Real third = Real::from_mpq(mpq_class(1, 3), 180);
  Decimal d = format_real(third, 30);
  CHECK(d.guaranteed == 30);
  CHECK(d.digits.substr(0, 6) == "0.3333");
  CHECK(d.radius != "0");

  Real exact = Real::from_mpq(mpq_class(5, 4), 64);
  Decimal e = format_real(exact, 10);
  CHECK(e.radius == "0");
  CHECK(parse_decimal(e.digits) == mpq_class(5, 4));

  std::mt19937_64 rng(9001);
  for (int i = 0; i < 400; ++i) {
    mpq_class q = rand_q(rng);
    Real x = Real::from_mpq(q, 150);
    if (i % 3 == 0) x.add_error(Mag::pow2(-(20 + static_cast<long>(rng() % 80))));
    Decimal f = format_real(x, 25);
    if (f.guaranteed <= 0) continue;
    mpq_class printed = parse_decimal(f.digits);
    mpq_class err = abs(printed - q);
    mpq_class place(1);
    for (int j = 0; j < f.guaranteed; ++j) place /= 10;
    CHECK(err <= place);
  }
}

TEST_CASE("ulp accounting matches mpfr precision") {
  // value 5 at prec 10: ulp = 2^(3-10)
  Real x = Real::from_ui(5, 10);
  Real y = x + Real::from_mpq(mpq_class(1, 3), 10);
  CHECK(!y.is_exact());
  CHECK(y.rad_to_double() <= 3 * std::ldexp(1.0, 3 - 10));
}
