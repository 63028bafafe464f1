#include "indexdens/primes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace indexdens {

std::vector<std::uint32_t> primes_up_to(std::uint32_t n) {
  std::vector<std::uint32_t> out;
  if (n < 2) return out;
  std::vector<bool> composite(static_cast<std::size_t>(n) + 1, false);
  for (std::uint64_t i = 2; i * i <= n; ++i)
    if (!composite[i])
      for (std::uint64_t j = i * i; j <= n; j += i) composite[j] = true;
  out.reserve(static_cast<std::size_t>(n / (std::log(std::max<double>(n, 3)) - 1.1)) + 16);
  for (std::uint32_t i = 2; i <= n; ++i)
    if (!composite[i]) out.push_back(i);
  return out;
}

std::vector<std::uint32_t> first_n_primes(std::size_t n) {
  if (n == 0) return {};
  double nd = static_cast<double>(std::max<std::size_t>(n, 6));
  auto bound = static_cast<std::uint32_t>(nd * (std::log(nd) + std::log(std::log(nd))) + 16);
  auto ps = primes_up_to(bound);
  while (ps.size() < n) {  // bound is provably sufficient for n >= 6, but be safe
    bound = bound + bound / 2;
    ps = primes_up_to(bound);
  }
  ps.resize(n);
  return ps;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  if (m == 1) return 0;
  std::uint64_t r = 1;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t m) {
  // extended Euclid; m need not be prime but gcd(a, m) must be 1
  std::int64_t t = 0, nt = 1;
  std::uint64_t r = m, nr = a % m;
  while (nr != 0) {
    std::uint64_t q = r / nr;
    std::int64_t tmp = t - static_cast<std::int64_t>(q) * nt;
    t = nt;
    nt = tmp;
    std::uint64_t tmpr = r - q * nr;
    r = nr;
    nr = tmpr;
  }
  if (r != 1) throw std::runtime_error("invmod: arguments not coprime");
  return t < 0 ? static_cast<std::uint64_t>(t + static_cast<std::int64_t>(m)) : static_cast<std::uint64_t>(t);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // deterministic for all 64-bit n with these witnesses
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::uint64_t pollard_brent(std::uint64_t n) {
  // n odd composite, no factor <= 1000
  std::uint64_t seed = n;
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::uint64_t y = splitmix64(seed) % (n - 1) + 1;
    std::uint64_t c = splitmix64(seed) % (n - 1) + 1;
    std::uint64_t m = 128, g = 1, r = 1, q = 1, x = 0, ys = 0;
    auto f = [&](std::uint64_t v) { return (mulmod(v, v, n) + c) % n; };
    while (g == 1) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      for (std::uint64_t k = 0; k < r && g == 1; k += m) {
        ys = y;
        std::uint64_t lim = std::min(m, r - k);
        for (std::uint64_t i = 0; i < lim; ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
      }
      r <<= 1;
    }
    if (g == n) {
      g = 1;
      while (g == 1) {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      }
    }
    if (g != n) return g;
  }
  throw std::runtime_error("factorize: rho stage failed");
}

const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> ps = primes_up_to(1000);
  return ps;
}

void factor_rec(std::uint64_t n, std::vector<std::uint64_t>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  std::uint64_t d = pollard_brent(n);
  factor_rec(d, out);
  factor_rec(n / d, out);
}

}  // namespace

std::vector<PrimePower> factorize(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("factorize: n must be positive");
  std::vector<PrimePower> out;
  for (std::uint32_t p : small_primes()) {
    if (static_cast<std::uint64_t>(p) * p > n) break;
    if (n % p == 0) {
      int e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      out.push_back({p, e});
    }
  }
  if (n > 1) {
    if (is_prime(n)) {
      out.push_back({n, 1});
    } else {
      std::vector<std::uint64_t> rest;
      factor_rec(n, rest);
      std::sort(rest.begin(), rest.end());
      for (std::size_t i = 0; i < rest.size();) {
        std::size_t j = i;
        while (j < rest.size() && rest[j] == rest[i]) ++j;
        out.push_back({rest[i], static_cast<int>(j - i)});
        i = j;
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const PrimePower& a, const PrimePower& b) { return a.p < b.p; });
  return out;
}

std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t r = n;
  for (const auto& [p, e] : factorize(n)) r = r / p * (p - 1);
  return r;
}

std::uint64_t squarefree_kernel(std::uint64_t n) {
  std::uint64_t r = 1;
  for (const auto& [p, e] : factorize(n)) r *= p;
  return r;
}

int mobius(std::uint64_t n) {
  int sign = 1;
  for (const auto& [p, e] : factorize(n)) {
    if (e > 1) return 0;
    sign = -sign;
  }
  return sign;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out{1};
  for (const auto& [p, e] : factorize(n)) {
    std::size_t sz = out.size();
    std::uint64_t pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < sz; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

int jacobi(std::int64_t a, std::uint64_t n) {
  if (n % 2 == 0) throw std::invalid_argument("jacobi: n must be odd");
  std::int64_t nn = static_cast<std::int64_t>(n);
  a %= nn;
  if (a < 0) a += nn;
  int result = 1;
  std::uint64_t ua = static_cast<std::uint64_t>(a), un = n;
  while (ua != 0) {
    while (ua % 2 == 0) {
      ua >>= 1;
      if (un % 8 == 3 || un % 8 == 5) result = -result;
    }
    std::swap(ua, un);
    if (ua % 4 == 3 && un % 4 == 3) result = -result;
    ua %= un;
  }
  return un == 1 ? result : 0;
}

std::uint64_t sqrt_mod(std::uint64_t a, std::uint64_t p) {
  a %= p;
  if (a == 0) return 0;
  if (p == 2) return a;
  if (jacobi(static_cast<std::int64_t>(a), p) != 1)
    throw std::invalid_argument("sqrt_mod: not a quadratic residue");
  if (p % 4 == 3) return powmod(a, (p + 1) / 4, p);
  // Tonelli-Shanks
  std::uint64_t q = p - 1;
  int s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  std::uint64_t z = 2;
  while (jacobi(static_cast<std::int64_t>(z), p) != -1) ++z;
  std::uint64_t m = s, c = powmod(z, q, p), t = powmod(a, q, p), r = powmod(a, (q + 1) / 2, p);
  while (t != 1) {
    std::uint64_t i = 0, tt = t;
    while (tt != 1) {
      tt = mulmod(tt, tt, p);
      ++i;
      if (i == m) throw std::runtime_error("sqrt_mod: internal error");
    }
    std::uint64_t b = powmod(c, std::uint64_t(1) << (m - i - 1), p);
    m = i;
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    r = mulmod(r, b, p);
  }
  return r;
}

std::uint64_t mult_order_mod_p(std::uint64_t g, std::uint64_t p) {
  g %= p;
  if (g == 0) throw std::invalid_argument("mult_order_mod_p: g divisible by p");
  std::uint64_t o = p - 1;
  for (const auto& [q, e] : factorize(p - 1)) {
    for (int i = 0; i < e && o % q == 0 && powmod(g, o / q, p) == 1; ++i) o /= q;
  }
  return o;
}

std::vector<std::uint32_t> spf_table(std::uint32_t n) {
  std::vector<std::uint32_t> spf(static_cast<std::size_t>(n) + 1, 0);
  std::vector<std::uint32_t> primes;
  for (std::uint32_t i = 2; i <= n; ++i) {
    if (spf[i] == 0) {
      spf[i] = i;
      primes.push_back(i);
    }
    for (std::uint32_t p : primes) {
      if (p > spf[i] || static_cast<std::uint64_t>(p) * i > n) break;
      spf[p * i] = p;
    }
  }
  return spf;
}

std::vector<std::int8_t> mobius_table(std::uint32_t n) {
  auto spf = spf_table(n);
  std::vector<std::int8_t> mu(static_cast<std::size_t>(n) + 1, 0);
  if (n >= 1) mu[1] = 1;
  for (std::uint32_t i = 2; i <= n; ++i) {
    std::uint32_t p = spf[i], m = i / p;
    mu[i] = (m % p == 0) ? 0 : -mu[m];
  }
  return mu;
}

std::vector<std::uint32_t> phi_table(std::uint32_t n) {
  auto spf = spf_table(n);
  std::vector<std::uint32_t> phi(static_cast<std::size_t>(n) + 1, 0);
  if (n >= 1) phi[1] = 1;
  for (std::uint32_t i = 2; i <= n; ++i) {
    std::uint32_t p = spf[i], m = i / p;
    phi[i] = (m % p == 0) ? phi[m] * p : phi[m] * (p - 1);
  }
  return phi;
}

}  // namespace indexdens
