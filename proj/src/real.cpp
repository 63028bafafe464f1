#include "indexdens/real.hpp"

#include <cstdio>
#include <vector>

namespace indexdens {

void sin_cos_2pi(long k, long m, mpfr_prec_t prec, Real& cos_out, Real& sin_out) {
  if (m <= 0) throw std::invalid_argument("sin_cos_2pi: order must be positive");
  k %= m;
  if (k < 0) k += m;
  if ((4 * k) % m == 0) {
    // multiple of pi/2: exact
    int quadrant = static_cast<int>((4 * k) / m);
    static const int cs[4] = {1, 0, -1, 0};
    static const int sn[4] = {0, 1, 0, -1};
    cos_out = Real::from_si(cs[quadrant], prec);
    sin_out = Real::from_si(sn[quadrant], prec);
    return;
  }
  mpfr_prec_t wp = prec + 32;
  Real pi = Real::pi(wp);
  mpq_class q(2 * k, m);
  q.canonicalize();
  Real theta(wp);
  int t = mpfr_mul_q(theta.value(), pi.value(), q.get_mpq_t(), MPFR_RNDN);
  theta.rad = pi.rad * Mag::from_ui(2);  // |q| < 2
  if (t != 0) theta.add_error(Mag::pow2(mpfr_get_exp(theta.value()) - wp));

  Real s(prec), c(prec);
  mpfr_sin_cos(s.value(), c.value(), theta.value(), MPFR_RNDN);
  // |sin'|, |cos'| <= 1, plus one ulp for the rounding of each result
  s.rad = theta.rad + ulp_of(s);
  c.rad = theta.rad + ulp_of(c);
  sin_out = std::move(s);
  cos_out = std::move(c);
}

Decimal format_real(const Real& x, int max_digits) {
  if (max_digits < 0) max_digits = 0;
  int k = 0;
  if (x.is_exact()) {
    k = max_digits;
  } else {
    mpfr_t rm, thr;
    mpfr_init2(rm, 64);
    mpfr_init2(thr, 64);
    x.rad.to_mpfr(rm);
    for (int cand = max_digits; cand >= 0; --cand) {
      mpfr_ui_pow_ui(thr, 10, static_cast<unsigned long>(cand), MPFR_RNDU);
      mpfr_ui_div(thr, 1, thr, MPFR_RNDD);
      mpfr_div_2ui(thr, thr, 1, MPFR_RNDD);  // 10^-cand / 2, rounded down
      if (mpfr_cmp(rm, thr) < 0) {
        k = cand;
        break;
      }
    }
    mpfr_clear(rm);
    mpfr_clear(thr);
  }

  char fmt[16];
  std::snprintf(fmt, sizeof fmt, "%%.%dRf", k);
  int len = mpfr_snprintf(nullptr, 0, fmt, x.value());
  std::vector<char> buf(static_cast<size_t>(len) + 1);
  mpfr_snprintf(buf.data(), buf.size(), fmt, x.value());

  std::string radius = "0";
  if (!x.is_exact()) {
    mpfr_t rm;
    mpfr_init2(rm, 64);
    x.rad.to_mpfr(rm);
    char rbuf[64];
    mpfr_snprintf(rbuf, sizeof rbuf, "%.2Re", rm);
    radius = rbuf;
    mpfr_clear(rm);
  }
  return Decimal{std::string(buf.data()), k, radius};
}

}  // namespace indexdens
