#include "indexdens/density.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
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

std::uint64_t upow(std::uint64_t b, long e) {
  std::uint64_t r = 1;
  for (long i = 0; i < e; ++i) r *= b;
  return r;
}

}  // namespace

const std::vector<std::string>& DegreeModel::builtin_names() {
  static const std::vector<std::string> names{"generic-r1", "q-sqrt5-golden", "q-sqrt5-second"};
  return names;
}

const DegreeModel& DegreeModel::builtin(const std::string& name) {
  static const DegreeModel generic{1, 1, {{1, 1}}, "generic rank-1 model, degree phi(n) n", "generic-r1"};
  static const DegreeModel golden{
      1, 5, {{1, 1}, {5, 2}}, "Q(sqrt(5)), G = <(1+sqrt5)/2>", "q-sqrt5-golden"};
  static const DegreeModel second{1,
                                  10,
                                  {{1, 1}, {2, 1}, {5, 2}, {10, 4}},
                                  "Q(sqrt(5)), G = <-(5+sqrt5)/2>",
                                  "q-sqrt5-second"};
  if (name == "generic-r1") return generic;
  if (name == "q-sqrt5-golden") return golden;
  if (name == "q-sqrt5-second") return second;
  throw std::invalid_argument("unknown builtin model: " + name);
}

DegreeModel DegreeModel::parse_text(const std::string& text, const std::string& name) {
  DegreeModel m;
  m.C.clear();
  m.name = name;
  bool saw_rank = false, saw_n0 = false;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
    auto notspace = [](unsigned char c) { return !std::isspace(c); };
    line.erase(line.begin(), std::find_if(line.begin(), line.end(), notspace));
    line.erase(std::find_if(line.rbegin(), line.rend(), notspace).base(), line.end());
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(name + ":" + std::to_string(lineno) + ": expected key = value");
    std::string key = line.substr(0, eq), value = line.substr(eq + 1);
    auto trim = [&](std::string& s) {
      s.erase(s.begin(), std::find_if(s.begin(), s.end(), notspace));
      s.erase(std::find_if(s.rbegin(), s.rend(), notspace).base(), s.end());
    };
    trim(key);
    trim(value);
    auto parse_u64 = [&](const std::string& s) {
      std::size_t used = 0;
      std::uint64_t v = std::stoull(s, &used);
      if (used != s.size()) throw std::invalid_argument(name + ": bad integer '" + s + "'");
      return v;
    };
    if (key == "rank") {
      m.rank = static_cast<long>(parse_u64(value));
      saw_rank = true;
    } else if (key == "n0") {
      m.n0 = parse_u64(value);
      saw_n0 = true;
    } else if (key == "description") {
      m.description = value;
    } else if (key.size() > 3 && key.substr(0, 2) == "C(" && key.back() == ')') {
      std::uint64_t g = parse_u64(key.substr(2, key.size() - 3));
      if (m.C.count(g))
        throw std::invalid_argument(name + ": duplicate key C(" + std::to_string(g) + ")");
      m.C[g] = parse_u64(value);
    } else {
      throw std::invalid_argument(name + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  if (!saw_rank || !saw_n0)
    throw std::invalid_argument(name + ": model file must set rank and n0");
  m.validate();
  return m;
}

DegreeModel DegreeModel::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open model file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str(), path);
}

void DegreeModel::validate() const {
  if (rank < 1) throw std::invalid_argument("model: rank must be >= 1");
  if (n0 < 1) throw std::invalid_argument("model: n0 must be >= 1");
  auto divs = divisors(n0);
  for (auto g : divs)
    if (!C.count(g))
      throw std::invalid_argument("model: missing C(" + std::to_string(g) + ")");
  for (const auto& [g, c] : C) {
    if (n0 % g != 0)
      throw std::invalid_argument("model: C(" + std::to_string(g) + ") given but " +
                                  std::to_string(g) + " does not divide n0");
    if (c < 1) throw std::invalid_argument("model: C values must be >= 1");
  }
  if (C.at(1) != 1) throw std::invalid_argument("model: C(1) must be 1");
  for (auto g : divs)
    for (auto h : divs)
      if (h % g == 0 && C.at(h) % C.at(g) != 0)
        throw std::invalid_argument("model: C(" + std::to_string(g) + ") must divide C(" +
                                    std::to_string(h) + ")");
  for (std::uint64_t n = 1; n <= 4 * n0 * n0; ++n) {
    mpz_class deg = mpz_pow(mpz_class(n), static_cast<unsigned long>(rank)) * euler_phi(n);
    if (!mpz_divisible_ui_p(deg.get_mpz_t(), C.at(std::gcd(n, n0))))
      throw std::invalid_argument("model: non-integral degree at n = " + std::to_string(n));
  }
}

std::uint64_t DegreeModel::C_of(std::uint64_t g) const {
  auto it = C.find(g);
  if (it == C.end())
    throw std::invalid_argument("model: C undefined at " + std::to_string(g));
  return it->second;
}

mpz_class DegreeModel::degree(std::uint64_t n) const {
  if (n == 0) throw std::invalid_argument("degree: n must be positive");
  mpz_class deg = mpz_pow(mpz_class(n), static_cast<unsigned long>(rank)) * euler_phi(n);
  std::uint64_t c = C_of(std::gcd(n, n0));
  if (!mpz_divisible_ui_p(deg.get_mpz_t(), c))
    throw std::runtime_error("model: non-integral degree at n = " + std::to_string(n));
  return deg / static_cast<unsigned long>(c);
}

mpq_class DegreeModel::dens_zero_exact(std::uint64_t d) const {
  mpq_class out(1, degree(d));
  out.canonicalize();
  return out;
}

DensityReport dens(std::uint64_t a, std::uint64_t d, const DegreeModel& model,
                   const DensityOptions& opts) {
  if (d == 0) throw std::invalid_argument("dens: modulus must be positive");
  model.validate();
  a %= d;
  DensityReport rep;
  rep.a = a;
  rep.d = d;

  if (a == 0) {
    rep.w = d;
    rep.d_reduced = 1;
    rep.exact = true;
    rep.exact_value = model.dens_zero_exact(d);
    rep.density = Real::from_mpq(rep.exact_value, opts.prec);
    return rep;
  }

  const std::uint64_t w = std::gcd(a, d);
  const std::uint64_t ap = a / w, dp = d / w;
  if (dp > 1000000) throw std::invalid_argument("dens: reduced modulus too large");
  rep.w = w;
  rep.d_reduced = static_cast<long>(dp);

  const mpfr_prec_t wp = opts.prec + 32;
  const long r = model.rank;
  CharacterGroup G(static_cast<long>(dp));
  const auto n0_divs = divisors(model.n0);
  const mpz_class wr = mpz_pow(mpz_class(w), static_cast<unsigned long>(r));
  const mpq_class inv_phi(1, G.group()->phi());

  Complex total = Complex::zero(wp);
  for (const auto& chi : G.all()) {
    // inner = sum_{g | n0} C(g)/w^r sum_{n | n0/g} mu(n) c_chi(gn/(gn,w), w, r)
    Complex inner = Complex::zero(wp);
    for (auto g : n0_divs) {
      for (auto n : divisors(model.n0 / g)) {
        int mu = mobius(n);
        if (mu == 0) continue;
        std::uint64_t gn = g * n;
        std::uint64_t N = gn / std::gcd(gn, w);
        Complex c = c_chi(N, w, r, chi, wp);
        mpq_class scale(mpz_class(model.C_of(g)) * mu, wr);
        scale.canonicalize();
        inner += c.scaled(Real::from_mpq(scale, wp));
      }
    }
    Complex coeff = chi.eval(static_cast<long long>(ap)).conj().to_complex(wp) * inner;
    coeff = coeff.scaled(Real::from_mpq(inv_phi, wp));
    Complex b = b_chi_auto(chi, r, wp, opts.b_terms);
    total += coeff * b;
    rep.coefficients.emplace_back(chi.label(), coeff);
    rep.b_values.emplace_back(chi.label(), b);
  }

  // conjugate characters pair off: the imaginary part must vanish to rounding level
  rep.imaginary_residual = std::abs(total.im.to_double());
  Mag imag_tol = Mag::pow2(-static_cast<std::int64_t>(opts.prec) / 2);
  if (!(Mag::upper_abs(total.im.value()) < imag_tol))
    throw std::runtime_error("dens: imaginary residual exceeds tolerance (character arithmetic bug?)");

  rep.density = total.re.rounded_to(opts.prec);
  return rep;
}

Real rho(std::uint64_t a, std::uint64_t d, const DensityOptions& opts) {
  return dens(a, d, DegreeModel::builtin("generic-r1"), opts).density;
}

mpq_class rho_zero_exact(std::uint64_t d) {
  mpq_class out(1, mpz_class(d) * euler_phi(d));
  out.canonicalize();
  return out;
}

namespace {

// sum_{v > T} 1/(v^r phi(v)) <= (2/r) 2.204 T^-r + 7 T^{-r-1/2}; overall
// oracle tail <= 2 D 1.944 * that (both t- and v-side tails).
double oracle_tail_bound(std::uint64_t T, long r, std::uint64_t D) {
  double Td = static_cast<double>(T);
  double one_sided = (2.0 / static_cast<double>(r)) * 2.204 / std::pow(Td, static_cast<double>(r)) +
                     7.0 / std::pow(Td, static_cast<double>(r) + 0.5);
  return 2.0 * static_cast<double>(D) * 1.944 * one_sided * 1.0000001;
}

}  // namespace

OracleResult dens_series_oracle(std::uint64_t a, std::uint64_t d, const DegreeModel& model,
                                std::uint64_t T, mpfr_prec_t prec) {
  if (d == 0 || T < d + 1 || T < 16) throw std::invalid_argument("dens_series_oracle: bad T or d");
  model.validate();
  a %= d;
  auto Tu = static_cast<std::uint32_t>(T);
  auto mu = mobius_table(Tu);
  auto phi = phi_table(Tu);
  const long r = model.rank;

  Real sum(prec);
  mpz_class deg, num;
  for (std::uint64_t t = (a == 0 ? d : a); t <= T; t += d) {
    for (std::uint64_t v = 1; v <= T; ++v) {
      if (mu[v] == 0) continue;
      std::uint64_t vt = v * t;
      std::uint64_t g = std::gcd(v, t);
      // phi(vt) = phi(v) phi(t) g / phi(g)
      std::uint64_t phivt = phi[v] / phi[g] * phi[t] * g;
      deg = mpz_pow(mpz_class(vt), static_cast<unsigned long>(r)) * phivt;
      std::uint64_t c = model.C_of(std::gcd(vt, model.n0));
      Real term = Real::from_ui(c, prec).div_by_mpz(deg);
      if (mu[v] > 0)
        sum += term;
      else
        sum -= term;
    }
  }
  double tail = oracle_tail_bound(T, r, std::max_element(model.C.begin(), model.C.end(),
                                                         [](auto& x, auto& y) {
                                                           return x.second < y.second;
                                                         })
                                             ->second);
  sum.add_error(Mag::from_double_upper(tail));
  return {sum, tail};
}

OracleResult rho_partial(std::uint64_t a, std::uint64_t d, std::uint64_t delta,
                         std::uint64_t d1, std::uint64_t T, mpfr_prec_t prec) {
  if (d == 0 || d1 == 0 || d1 % delta != 0) throw std::invalid_argument("rho_partial: bad arguments");
  if (T < 16) throw std::invalid_argument("rho_partial: T too small");
  auto Tu = static_cast<std::uint32_t>(T);
  auto mu = mobius_table(Tu);
  auto phi = phi_table(Tu);

  Real sum(prec);
  mpz_class deg;
  for (std::uint64_t t = (a % d == 0 ? d : a % d); t <= T; t += d) {
    for (std::uint64_t v = 1; v <= T; ++v) {
      if (mu[v] == 0 || std::gcd(v, d1) != delta) continue;
      std::uint64_t vt = v * t;
      std::uint64_t g = std::gcd(v, t);
      std::uint64_t phivt = phi[v] / phi[g] * phi[t] * g;
      deg = mpz_class(vt) * phivt;
      Real term = Real::from_ui(1, prec).div_by_mpz(deg);
      if (mu[v] > 0)
        sum += term;
      else
        sum -= term;
    }
  }
  double tail = oracle_tail_bound(T, 1, 1);
  sum.add_error(Mag::from_double_upper(tail));
  return {sum, tail};
}

std::uint64_t gcd_infty(std::uint64_t d, std::uint64_t n0) {
  if (d == 0) throw std::invalid_argument("gcd_infty: d must be positive");
  std::uint64_t out = 1;
  for (const auto& [p, e] : factorize(d))
    if (n0 % p == 0) out *= upow(p, e);
  return out;
}

Positivity dens_positive(std::uint64_t a, std::uint64_t d, const DegreeModel& model) {
  if (d == 0) throw std::invalid_argument("dens_positive: modulus must be positive");
  a %= d;
  if (a == 0) return Positivity::positive;               // density 1/degree(d) > 0
  if (std::gcd(d, model.n0) == 1) return Positivity::positive;
  std::uint64_t d0 = gcd_infty(d, model.n0);
  std::uint64_t a0 = a % d0;
  if (a0 == 0) return Positivity::positive;
  if (std::gcd(d0, model.n0) == 1) return Positivity::positive;
  return Positivity::unknown;
}

}  // namespace indexdens
