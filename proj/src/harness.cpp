#include "indexdens/harness.hpp"

#include <omp.h>

#include <algorithm>
#include <cctype>
#include <exception>
#include <numeric>
#include <stdexcept>

#include "indexdens/primes.hpp"

namespace indexdens {

QuadraticField QuadraticField::rationals() {
  QuadraticField K;
  K.rational = true;
  K.D = 0;
  K.omega_half = false;
  K.disc = 1;
  return K;
}

QuadraticField QuadraticField::real_quadratic(std::int64_t D) {
  if (D < 2) throw std::invalid_argument("real_quadratic: D must be >= 2");
  for (const auto& f : factorize(static_cast<std::uint64_t>(D)))
    if (f.e > 1) throw std::invalid_argument("real_quadratic: D must be squarefree");
  QuadraticField K;
  K.rational = false;
  K.D = D;
  K.omega_half = (D % 4 == 1);
  K.disc = K.omega_half ? D : 4 * D;
  return K;
}

namespace {

// Parser for field expressions.  Values are x + y sqrt(D) with rational x, y.
struct QVal {
  mpq_class x, y;
};

QVal qmul(const QVal& a, const QVal& b, std::int64_t D) {
  QVal r;
  r.x = a.x * b.x + D * (a.y * b.y);
  r.y = a.x * b.y + a.y * b.x;
  return r;
}

QVal qinv(const QVal& a, std::int64_t D) {
  // norm x^2 - D y^2 vanishes only at 0 since D is not a square
  mpq_class n = a.x * a.x - D * (a.y * a.y);
  if (n == 0) throw std::invalid_argument("parse_element: division by zero");
  QVal r;
  r.x = a.x / n;
  r.y = -a.y / n;
  return r;
}

struct ExprParser {
  const std::string& s;
  const QuadraticField& K;
  std::size_t i = 0;

  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(char c) {
    skip();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& what) {
    throw std::invalid_argument("parse_element: " + what + " at position " +
                                std::to_string(i) + " in \"" + s + "\"");
  }

  mpz_class integer() {
    skip();
    std::size_t j = i;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    if (j == i) fail("expected integer");
    mpz_class n(s.substr(i, j - i));
    i = j;
    return n;
  }

  QVal atom() {
    skip();
    if (i >= s.size()) fail("unexpected end of input");
    if (s[i] == '(') {
      ++i;
      QVal v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(s[i]))) return {mpq_class(integer()), 0};
    if (s.compare(i, 4, "sqrt") == 0) {
      i += 4;
      bool paren = eat('(');
      mpz_class rad = integer();
      if (paren && !eat(')')) fail("expected ')'");
      if (K.rational) fail("sqrt is not available over the rationals");
      if (rad != K.D) fail("radicand must equal the field discriminant base D");
      return {0, 1};
    }
    fail("unexpected character");
  }

  QVal factor() {
    skip();
    bool neg = false;
    while (i < s.size() && (s[i] == '+' || s[i] == '-')) {
      if (s[i] == '-') neg = !neg;
      ++i;
      skip();
    }
    QVal v = atom();
    skip();
    if (i < s.size() && s[i] == '^') {
      ++i;
      skip();
      bool eneg = eat('-');
      mpz_class e = integer();
      if (!e.fits_ulong_p()) fail("exponent out of range");
      unsigned long n = e.get_ui();
      QVal base = v;
      v = {1, 0};
      while (n) {
        if (n & 1) v = qmul(v, base, K.D);
        base = qmul(base, base, K.D);
        n >>= 1;
      }
      if (eneg) v = qinv(v, K.D);
    }
    if (neg) {
      v.x = -v.x;
      v.y = -v.y;
    }
    return v;
  }

  QVal term() {
    QVal v = factor();
    for (;;) {
      skip();
      if (i < s.size() && s[i] == '*') {
        ++i;
        v = qmul(v, factor(), K.D);
      } else if (i < s.size() && s[i] == '/') {
        ++i;
        v = qmul(v, qinv(factor(), K.D), K.D);
      } else {
        return v;
      }
    }
  }

  QVal expr() {
    QVal v = term();
    for (;;) {
      skip();
      if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        bool sub = s[i] == '-';
        ++i;
        QVal t = term();
        if (sub) {
          v.x -= t.x;
          v.y -= t.y;
        } else {
          v.x += t.x;
          v.y += t.y;
        }
      } else {
        return v;
      }
    }
  }

  QVal parse() {
    QVal v = expr();
    skip();
    if (i != s.size()) fail("trailing input");
    return v;
  }
};

}  // namespace

FieldElement parse_element(const std::string& expr, const QuadraticField& K) {
  ExprParser ps{expr, K};
  QVal v = ps.parse();

  // Change to the omega basis: x + y sqrt(D) = (x - y) + 2y omega when
  // omega = (1 + sqrt D)/2, and is already in basis form otherwise.
  mpq_class a = K.omega_half ? mpq_class(v.x - v.y) : v.x;
  mpq_class b = K.omega_half ? mpq_class(2 * v.y) : v.y;

  mpz_class L;
  mpz_lcm(L.get_mpz_t(), a.get_den().get_mpz_t(), b.get_den().get_mpz_t());
  FieldElement e;
  e.A = a.get_num() * (L / a.get_den());
  e.B = b.get_num() * (L / b.get_den());
  e.C = L;
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), e.A.get_mpz_t(), e.B.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.C.get_mpz_t());
  e.A /= g;
  e.B /= g;
  e.C /= g;
  e.text = expr;
  return e;
}

void GroupSpec::validate() const {
  if (gens.empty()) throw std::invalid_argument("GroupSpec: at least one generator required");
  for (const auto& g : gens) {
    if (g.C <= 0) throw std::invalid_argument("GroupSpec: bad denominator");
    if (g.A == 0 && g.B == 0) throw std::invalid_argument("GroupSpec: zero generator");
    if (g.B == 0 && g.C == 1 && (g.A == 1 || g.A == -1))
      throw std::invalid_argument("GroupSpec: generator is a root of unity");
  }
}

std::vector<PrimeRecord> enumerate_primes(const QuadraticField& K, std::uint64_t x) {
  std::vector<PrimeRecord> out;
  if (x < 2) return out;
  if (x > 4000000000ull) throw std::invalid_argument("enumerate_primes: x too large");
  const auto ps = primes_up_to(static_cast<std::uint32_t>(x));
  if (K.rational) {
    out.reserve(ps.size());
    for (std::uint32_t p : ps) out.push_back({p, 1, false, p, 0, 0});
    return out;
  }
  for (std::uint32_t p32 : ps) {
    const std::uint64_t p = p32;
    if (p == 2) {
      if (!K.omega_half) {
        // 2 divides disc = 4D
        std::uint64_t r = static_cast<std::uint64_t>(K.D & 1);
        out.push_back({2, 1, true, 2, r, r});
      } else if (((K.D - 1) / 4) % 2 == 0) {
        // x^2 - x - (D-1)/4 splits mod 2 (D = 1 mod 8)
        out.push_back({2, 1, false, 2, 1, 0});
        out.push_back({2, 1, false, 2, 1, 1});
      } else if (4 <= x) {
        out.push_back({2, 2, false, 4, 0, 0});
      }
      continue;
    }
    if (K.D % static_cast<std::int64_t>(p) == 0) {
      std::uint64_t r = K.omega_half ? (p + 1) / 2 : 0;
      out.push_back({p, 1, true, p, 0, r});
      continue;
    }
    const int chi = jacobi(K.D, p);
    if (chi == 1) {
      const std::uint64_t dmod = static_cast<std::uint64_t>(K.D) % p;
      const std::uint64_t s = sqrt_mod(dmod, p);
      std::uint64_t r1, r2, s1, s2;
      if (K.omega_half) {
        const std::uint64_t half = (p + 1) / 2;  // inverse of 2
        r1 = mulmod(1 + s, half, p);
        s1 = s;
        r2 = mulmod(p + 1 - s, half, p);
        s2 = p - s;
      } else {
        r1 = s;
        s1 = s;
        r2 = p - s;
        s2 = p - s;
      }
      if (r1 > r2) {
        std::swap(r1, r2);
        std::swap(s1, s2);
      }
      out.push_back({p, 1, false, p, s1, r1});
      out.push_back({p, 1, false, p, s2, r2});
    } else if (p * p <= x) {
      out.push_back({p, 2, false, p * p, 0, 0});
    }
  }
  return out;
}

namespace {

// ---- residue computation ----

// Residue of (A + B omega)/C in F_p at a degree-one prime with omega = root.
std::optional<std::uint64_t> residue_f1(const FieldElement& g, const QuadraticField& K,
                                        std::uint64_t p, std::uint64_t root) {
  const std::uint64_t cC = mpz_fdiv_ui(g.C.get_mpz_t(), p);
  if (cC != 0) {
    std::uint64_t n = mpz_fdiv_ui(g.A.get_mpz_t(), p);
    if (!K.rational) n = (n + mulmod(mpz_fdiv_ui(g.B.get_mpz_t(), p), root, p)) % p;
    if (n == 0) return std::nullopt;  // positive valuation
    return mulmod(n, invmod(cC, p), p);
  }

  // p divides the denominator: work modulo p^{k+1}, lifting the root of the
  // minimal polynomial with linear Hensel steps.
  const mpz_class pz(static_cast<unsigned long>(p));
  mpz_class crem;
  const mp_bitcnt_t k = mpz_remove(crem.get_mpz_t(), g.C.get_mpz_t(), pz.get_mpz_t());
  mpz_class m;
  mpz_pow_ui(m.get_mpz_t(), pz.get_mpz_t(), k + 1);

  mpz_class rho(static_cast<unsigned long>(root));
  if (!K.rational && g.B != 0) {
    const std::uint64_t T = static_cast<std::uint64_t>(K.omega_trace());
    const std::uint64_t fp = (2 * root + p - T) % p;  // f'(root), nonzero: p unramified
    const std::uint64_t w = invmod(fp, p);
    mpz_class mod_j = pz;
    for (mp_bitcnt_t j = 1; j <= k; ++j) {
      mod_j *= pz;
      mpz_class t = rho * rho;
      t -= static_cast<long>(K.omega_trace()) * rho;
      t -= static_cast<long>(K.omega_norm_neg());
      mpz_fdiv_r(t.get_mpz_t(), t.get_mpz_t(), mod_j.get_mpz_t());
      t *= static_cast<unsigned long>(w);
      rho -= t;
      mpz_fdiv_r(rho.get_mpz_t(), rho.get_mpz_t(), mod_j.get_mpz_t());
    }
  }

  mpz_class n = g.A + g.B * rho;
  mpz_fdiv_r(n.get_mpz_t(), n.get_mpz_t(), m.get_mpz_t());
  if (n == 0) return std::nullopt;  // valuation exceeds k
  mpz_class nrem;
  const mp_bitcnt_t v = mpz_remove(nrem.get_mpz_t(), n.get_mpz_t(), pz.get_mpz_t());
  if (v != k) return std::nullopt;  // v < k: pole at this prime
  const std::uint64_t num = mpz_fdiv_ui(nrem.get_mpz_t(), p);
  const std::uint64_t den = mpz_fdiv_ui(crem.get_mpz_t(), p);
  return mulmod(num, invmod(den, p), p);
}

// F_{p^2} = F_p[theta], theta^2 = T theta + U.
struct Fq2 {
  std::uint64_t a, b;
};
struct Fq2Ctx {
  std::uint64_t p, T, U;
};

Fq2 f2mul(const Fq2& x, const Fq2& y, const Fq2Ctx& c) {
  const std::uint64_t bb = mulmod(x.b, y.b, c.p);
  Fq2 r;
  r.a = (mulmod(x.a, y.a, c.p) + mulmod(c.U, bb, c.p)) % c.p;
  r.b = (mulmod(x.a, y.b, c.p) + mulmod(x.b, y.a, c.p) + mulmod(c.T, bb, c.p)) % c.p;
  return r;
}

Fq2 f2pow(Fq2 x, std::uint64_t e, const Fq2Ctx& c) {
  Fq2 r{1, 0};
  while (e) {
    if (e & 1) r = f2mul(r, x, c);
    x = f2mul(x, x, c);
    e >>= 1;
  }
  return r;
}

std::uint64_t val_p(const mpz_class& n, const mpz_class& pz, mpz_class& rem) {
  if (n == 0) {
    rem = 0;
    return ~0ull;  // infinity
  }
  return mpz_remove(rem.get_mpz_t(), n.get_mpz_t(), pz.get_mpz_t());
}

std::optional<Fq2> residue_f2(const FieldElement& g, std::uint64_t p) {
  const mpz_class pz(static_cast<unsigned long>(p));
  mpz_class arem, brem, crem;
  const std::uint64_t k = val_p(g.C, pz, crem);
  const std::uint64_t va = val_p(g.A, pz, arem);
  const std::uint64_t vb = val_p(g.B, pz, brem);
  // the prime is inert, so the valuation of A + B omega is min(va, vb)
  if (std::min(va, vb) != k) return std::nullopt;
  const std::uint64_t a = va > k ? 0 : mpz_fdiv_ui(arem.get_mpz_t(), p);
  const std::uint64_t b = vb > k ? 0 : mpz_fdiv_ui(brem.get_mpz_t(), p);
  const std::uint64_t ci = invmod(mpz_fdiv_ui(crem.get_mpz_t(), p), p);
  return Fq2{mulmod(a, ci, p), mulmod(b, ci, p)};
}

std::uint64_t order_f1(std::uint64_t u, std::uint64_t p, const std::vector<PrimePower>& fac) {
  std::uint64_t o = p - 1;
  for (const auto& f : fac)
    for (int i = 0; i < f.e; ++i) {
      if (o % f.p != 0) break;
      const std::uint64_t cand = o / f.p;
      if (powmod(u, cand, p) == 1)
        o = cand;
      else
        break;
    }
  return o;
}

std::uint64_t order_f2(const Fq2& u, const Fq2Ctx& c, std::uint64_t qm1,
                       const std::vector<PrimePower>& fac) {
  std::uint64_t o = qm1;
  for (const auto& f : fac)
    for (int i = 0; i < f.e; ++i) {
      if (o % f.p != 0) break;
      const std::uint64_t cand = o / f.p;
      const Fq2 t = f2pow(u, cand, c);
      if (t.a == 1 && t.b == 0)
        o = cand;
      else
        break;
    }
  return o;
}

std::vector<PrimePower> merge_factors(std::vector<PrimePower> a, const std::vector<PrimePower>& b) {
  for (const auto& f : b) {
    bool found = false;
    for (auto& g : a)
      if (g.p == f.p) {
        g.e += f.e;
        found = true;
        break;
      }
    if (!found) a.push_back(f);
  }
  std::sort(a.begin(), a.end(), [](const PrimePower& x, const PrimePower& y) { return x.p < y.p; });
  return a;
}

std::optional<std::uint64_t> index_of_record(const QuadraticField& K,
                                             const std::vector<FieldElement>& gens,
                                             const PrimeRecord& rec) {
  if (rec.ramified) return std::nullopt;
  if (rec.f == 1) {
    const std::uint64_t p = rec.p;
    const auto fac = factorize(p - 1);
    std::uint64_t l = 1;
    for (const auto& g : gens) {
      const auto u = residue_f1(g, K, p, rec.omega_root);
      if (!u) return std::nullopt;
      const std::uint64_t o = order_f1(*u, p, fac);
      l = l / std::gcd(l, o) * o;
    }
    return (p - 1) / l;
  }
  const std::uint64_t p = rec.p;
  const std::uint64_t qm1 = (p - 1) * (p + 1);
  const auto fac = merge_factors(factorize(p - 1), factorize(p + 1));
  const Fq2Ctx ctx{p, static_cast<std::uint64_t>(K.omega_trace()) % p,
                   static_cast<std::uint64_t>(K.omega_norm_neg()) % p};
  std::uint64_t l = 1;
  for (const auto& g : gens) {
    const auto u = residue_f2(g, p);
    if (!u) return std::nullopt;
    const std::uint64_t o = order_f2(*u, ctx, qm1, fac);
    l = l / std::gcd(l, o) * o;
  }
  return qm1 / l;
}

struct Tally {
  std::vector<std::uint64_t> counts;
  std::uint64_t counted = 0, skipped = 0;
  std::map<std::uint64_t, std::uint64_t> hist;
};

void tally_range(const QuadraticField& K, const std::vector<FieldElement>& gens,
                 const std::vector<PrimeRecord>& recs, std::size_t lo, std::size_t hi,
                 const CountOptions& opts, Tally& t) {
  for (std::size_t i = lo; i < hi; ++i) {
    const auto idx = index_of_record(K, gens, recs[i]);
    if (!idx) {
      ++t.skipped;
      continue;
    }
    ++t.counted;
    ++t.counts[*idx % opts.modulus];
    if (*idx <= opts.histogram_cap) ++t.hist[*idx];
  }
}

CountReport assemble(const CountOptions& opts, std::vector<Tally>&& parts) {
  CountReport rep;
  rep.x = opts.x;
  rep.modulus = opts.modulus;
  rep.include_skipped_in_total = opts.include_skipped_in_total;
  rep.counts.assign(opts.modulus, 0);
  for (const auto& t : parts) {
    rep.counted += t.counted;
    rep.skipped += t.skipped;
    for (std::size_t a = 0; a < opts.modulus; ++a) rep.counts[a] += t.counts[a];
    for (const auto& [k, v] : t.hist) rep.histogram[k] += v;
  }
  return rep;
}

void check_count_options(const CountOptions& opts) {
  if (opts.modulus == 0) throw std::invalid_argument("count: modulus must be positive");
  if (opts.x < 2) throw std::invalid_argument("count: x must be at least 2");
}

}  // namespace

std::optional<std::uint64_t> index_at_prime(const QuadraticField& K, const GroupSpec& G,
                                            const PrimeRecord& rec) {
  G.validate();
  return index_of_record(K, G.gens, rec);
}

std::vector<double> CountReport::ratios() const {
  const std::uint64_t denom = counted + (include_skipped_in_total ? skipped : 0);
  std::vector<double> r(counts.size(), 0.0);
  if (denom == 0) return r;
  for (std::size_t a = 0; a < counts.size(); ++a)
    r[a] = static_cast<double>(counts[a]) / static_cast<double>(denom);
  return r;
}

CountReport count_reference(const QuadraticField& K, const GroupSpec& G,
                            const CountOptions& opts) {
  check_count_options(opts);
  G.validate();
  const auto recs = enumerate_primes(K, opts.x);
  std::vector<Tally> parts(1);
  parts[0].counts.assign(opts.modulus, 0);
  tally_range(K, G.gens, recs, 0, recs.size(), opts, parts[0]);
  return assemble(opts, std::move(parts));
}

CountReport count(const QuadraticField& K, const GroupSpec& G, const CountOptions& opts) {
  check_count_options(opts);
  G.validate();
  if (opts.threads > 0) omp_set_num_threads(opts.threads);
  const auto recs = enumerate_primes(K, opts.x);
  const std::size_t kBlock = 4096;
  const std::size_t nblocks = (recs.size() + kBlock - 1) / kBlock;
  std::vector<Tally> parts(nblocks);
  std::exception_ptr err;
#pragma omp parallel for schedule(dynamic)
  for (std::size_t b = 0; b < nblocks; ++b) {
    try {
      parts[b].counts.assign(opts.modulus, 0);
      const std::size_t lo = b * kBlock;
      const std::size_t hi = std::min(recs.size(), lo + kBlock);
      tally_range(K, G.gens, recs, lo, hi, opts, parts[b]);
    } catch (...) {
#pragma omp critical
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
  return assemble(opts, std::move(parts));
}

}  // namespace indexdens
