#include "indexdens/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

#include "indexdens/primes.hpp"

namespace indexdens {

RootOfUnity RootOfUnity::make(long k, long m) {
  if (m <= 0) throw std::invalid_argument("RootOfUnity: order must be positive");
  k %= m;
  if (k < 0) k += m;
  long g = std::gcd(k, m);
  return {false, k / g, m / g};
}

RootOfUnity RootOfUnity::mul(const RootOfUnity& o) const {
  if (zero || o.zero) return zero_value();
  return make(k * o.m + o.k * m, m * o.m);
}

RootOfUnity RootOfUnity::pow(long e) const {
  if (zero) {
    if (e > 0) return zero_value();
    throw std::invalid_argument("RootOfUnity: zero to non-positive power");
  }
  long em = e % m;
  if (em < 0) em += m;
  return make(k * em, m);
}

Complex RootOfUnity::to_complex(mpfr_prec_t prec) const {
  if (zero) return Complex::zero(prec);
  Real c(prec), s(prec);
  sin_cos_2pi(k, m, prec, c, s);
  return {std::move(c), std::move(s)};
}

namespace {

using Poly = std::vector<long long>;  // constant term first

void poly_trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Remainder of a modulo monic b, in place.
void poly_mod(Poly& a, const Poly& b) {
  poly_trim(a);
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    long long lead = a.back();
    std::size_t shift = a.size() - 1 - db;
    if (lead != 0)
      for (std::size_t i = 0; i < db; ++i) a[shift + i] -= lead * b[i];
    a.pop_back();
    poly_trim(a);
  }
}

// Exact division by monic b (remainder known to vanish).
Poly poly_divexact(Poly a, const Poly& b) {
  poly_trim(a);
  const std::size_t db = b.size() - 1;
  if (a.empty()) return {};
  Poly q(a.size() - db, 0);
  while (a.size() > db) {
    long long lead = a.back();
    std::size_t shift = a.size() - 1 - db;
    q[shift] = lead;
    if (lead != 0)
      for (std::size_t i = 0; i <= db; ++i) a[shift + i] -= lead * b[i];
    poly_trim(a);
  }
  if (!a.empty()) throw std::runtime_error("poly_divexact: nonzero remainder");
  return q;
}

}  // namespace

const std::vector<long long>& cyclotomic_poly(long m) {
  if (m <= 0) throw std::invalid_argument("cyclotomic_poly: order must be positive");
  static std::map<long, Poly> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  if (auto it = cache.find(m); it != cache.end()) return it->second;
  for (std::uint64_t dd : divisors(static_cast<std::uint64_t>(m))) {
    long d = static_cast<long>(dd);
    if (cache.count(d)) continue;
    Poly num(static_cast<std::size_t>(d) + 1, 0);  // x^d - 1
    num[0] = -1;
    num[static_cast<std::size_t>(d)] = 1;
    for (std::uint64_t e : divisors(dd))
      if (static_cast<long>(e) != d) num = poly_divexact(std::move(num), cache.at(static_cast<long>(e)));
    cache.emplace(d, std::move(num));
  }
  return cache.at(m);
}

void Cyclotomic::reduce() {
  poly_mod(coef_, cyclotomic_poly(m_));
}

Cyclotomic Cyclotomic::integer(long m, long long c) {
  Cyclotomic z(m);
  if (c != 0) z.coef_ = {c};
  return z;
}

Cyclotomic Cyclotomic::root_power(long m, long k) {
  k %= m;
  if (k < 0) k += m;
  Cyclotomic z(m);
  z.coef_.assign(static_cast<std::size_t>(k) + 1, 0);
  z.coef_.back() = 1;
  z.reduce();
  return z;
}

Cyclotomic Cyclotomic::embed(long m, const RootOfUnity& u) {
  if (u.zero) return Cyclotomic(m);
  if (m % u.m != 0) throw std::invalid_argument("Cyclotomic::embed: incompatible orders");
  return root_power(m, u.k * (m / u.m));
}

Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.m_ != b.m_) throw std::invalid_argument("Cyclotomic: mixed orders");
  Cyclotomic r(a.m_);
  r.coef_.resize(std::max(a.coef_.size(), b.coef_.size()), 0);
  for (std::size_t i = 0; i < a.coef_.size(); ++i) r.coef_[i] += a.coef_[i];
  for (std::size_t i = 0; i < b.coef_.size(); ++i) r.coef_[i] += b.coef_[i];
  poly_trim(r.coef_);
  return r;
}

Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.m_ != b.m_) throw std::invalid_argument("Cyclotomic: mixed orders");
  Cyclotomic r(a.m_);
  r.coef_.resize(std::max(a.coef_.size(), b.coef_.size()), 0);
  for (std::size_t i = 0; i < a.coef_.size(); ++i) r.coef_[i] += a.coef_[i];
  for (std::size_t i = 0; i < b.coef_.size(); ++i) r.coef_[i] -= b.coef_[i];
  poly_trim(r.coef_);
  return r;
}

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.m_ != b.m_) throw std::invalid_argument("Cyclotomic: mixed orders");
  Cyclotomic r(a.m_);
  if (a.is_zero() || b.is_zero()) return r;
  r.coef_.assign(a.coef_.size() + b.coef_.size() - 1, 0);
  for (std::size_t i = 0; i < a.coef_.size(); ++i) {
    if (a.coef_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coef_.size(); ++j) r.coef_[i + j] += a.coef_[i] * b.coef_[j];
  }
  r.reduce();
  return r;
}

Complex Cyclotomic::to_complex(mpfr_prec_t prec) const {
  Complex sum = Complex::zero(prec);
  for (std::size_t j = 0; j < coef_.size(); ++j) {
    if (coef_[j] == 0) continue;
    Real c(prec), s(prec);
    sin_cos_2pi(static_cast<long>(j), m_, prec, c, s);
    Real w = Real::from_si(coef_[j], prec);
    sum += Complex{c * w, s * w};
  }
  return sum;
}

}  // namespace indexdens
