#include "indexdens/chargroup.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

#include "indexdens/primes.hpp"

namespace indexdens {

namespace {

// Smallest primitive root mod p^e (p odd prime), via the classical lift test.
long primitive_root_odd(std::uint64_t p, int e) {
  auto fac = factorize(p - 1);
  std::uint64_t g = 2;
  for (;; ++g) {
    bool ok = true;
    for (const auto& [q, k] : fac)
      if (powmod(g, (p - 1) / q, p) == 1) {
        ok = false;
        break;
      }
    if (ok) break;
  }
  if (e >= 2 && powmod(g, p - 1, p * p) == 1) g += p;
  return static_cast<long>(g);
}

std::uint64_t crt_lift(std::uint64_t g, std::uint64_t m, std::uint64_t d) {
  // x = g mod m, x = 1 mod d/m  (m, d/m coprime)
  std::uint64_t rest = d / m;
  if (rest == 1) return g % d;
  // x = 1 + rest * t with rest*t = g-1 mod m
  std::uint64_t t = mulmod((g + m - 1) % m, invmod(rest % m, m), m);
  return (1 + rest * t) % d;
}

}  // namespace

UnitGroup::UnitGroup(long d) : d_(d) {
  if (d <= 0) throw std::invalid_argument("UnitGroup: modulus must be positive");
  phi_ = static_cast<long>(euler_phi(static_cast<std::uint64_t>(d)));
  std::uint64_t ud = static_cast<std::uint64_t>(d);

  for (const auto& [p, e] : factorize(ud)) {
    std::uint64_t pe = 1;
    for (int i = 0; i < e; ++i) pe *= p;
    if (p == 2) {
      if (e == 2) {
        gen_.push_back(static_cast<long>(crt_lift(3, 4, ud)));
        order_.push_back(2);
      } else if (e >= 3) {
        gen_.push_back(static_cast<long>(crt_lift(pe - 1, pe, ud)));
        order_.push_back(2);
        gen_.push_back(static_cast<long>(crt_lift(5, pe, ud)));
        order_.push_back(static_cast<long>(pe / 4));
      }
      // e == 1: trivial factor
    } else {
      std::uint64_t g = static_cast<std::uint64_t>(primitive_root_odd(p, e));
      gen_.push_back(static_cast<long>(crt_lift(g % pe, pe, ud)));
      order_.push_back(static_cast<long>(pe / p * (p - 1)));
    }
  }

  exponent_ = 1;
  for (long o : order_) exponent_ = std::lcm(exponent_, o);

  unit_.assign(static_cast<std::size_t>(d), 0);
  table_.assign(static_cast<std::size_t>(d), {});
  // Depth-first enumeration of exponent tuples with prefix products.
  std::vector<std::int32_t> exps(gen_.size(), 0);
  auto rec = [&](auto&& self, std::size_t i, std::uint64_t value) -> void {
    if (i == gen_.size()) {
      long r = static_cast<long>(value % ud);
      if (d == 1) r = 0;
      if (unit_[r]) throw std::runtime_error("UnitGroup: duplicate residue (bad generators)");
      unit_[r] = 1;
      table_[r] = exps;
      return;
    }
    std::uint64_t v = value;
    for (std::int32_t t = 0; t < order_[i]; ++t) {
      exps[i] = t;
      self(self, i + 1, v);
      v = mulmod(v, static_cast<std::uint64_t>(gen_[i]), ud == 1 ? 1 : ud);
    }
    exps[i] = 0;
  };
  rec(rec, 0, d == 1 ? 0 : 1 % ud);

  long count = 0;
  for (char u : unit_) count += u;
  if (count != phi_) throw std::runtime_error("UnitGroup: enumeration does not cover phi(d) units");
}

const std::vector<std::int32_t>& UnitGroup::dlog(long long n) const {
  long r = residue(n);
  if (!unit_[r]) throw std::invalid_argument("UnitGroup::dlog: residue is not a unit");
  return table_[r];
}

bool DirichletCharacter::is_principal() const {
  for (auto c : exps)
    if (c != 0) return false;
  return true;
}

RootOfUnity DirichletCharacter::eval(long long n) const {
  if (!group->is_unit(n)) return RootOfUnity::zero_value();
  const auto& e = group->dlog(n);
  long L = group->exponent();
  long long sum = 0;
  const auto& ords = group->orders();
  for (std::size_t i = 0; i < e.size(); ++i)
    sum += static_cast<long long>(exps[i]) * e[i] % L * (L / ords[i]) % L;
  return RootOfUnity::make(static_cast<long>(sum % L), L);
}

Complex DirichletCharacter::eval_complex(long long n, mpfr_prec_t prec) const {
  return eval(n).to_complex(prec);
}

DirichletCharacter DirichletCharacter::conjugate() const {
  DirichletCharacter r{group, exps, ord};
  const auto& ords = group->orders();
  for (std::size_t i = 0; i < r.exps.size(); ++i)
    r.exps[i] = r.exps[i] == 0 ? 0 : static_cast<std::int32_t>(ords[i]) - r.exps[i];
  return r;
}

DirichletCharacter DirichletCharacter::times(const DirichletCharacter& o) const {
  if (modulus() != o.modulus())
    throw std::invalid_argument("DirichletCharacter::times: mixed moduli");
  DirichletCharacter r{group, exps, 1};
  const auto& ords = group->orders();
  for (std::size_t i = 0; i < r.exps.size(); ++i)
    r.exps[i] = static_cast<std::int32_t>((r.exps[i] + o.exps[i]) % ords[i]);
  long L = group->exponent(), g = L;
  for (std::size_t i = 0; i < r.exps.size(); ++i)
    g = std::gcd(g, static_cast<long>(r.exps[i]) * (L / ords[i]));
  r.ord = L / g;
  return r;
}

std::string DirichletCharacter::label() const {
  std::ostringstream os;
  os << "chi(mod " << modulus() << ";exps=";
  for (std::size_t i = 0; i < exps.size(); ++i) os << (i ? "," : "") << exps[i];
  os << ")";
  return os.str();
}

CharacterGroup::CharacterGroup(long d) : group_(std::make_shared<UnitGroup>(d)) {
  const auto& ords = group_->orders();
  long L = group_->exponent();
  std::vector<std::int32_t> exps(ords.size(), 0);
  chars_.reserve(static_cast<std::size_t>(group_->phi()));
  for (;;) {
    long g = L;
    for (std::size_t i = 0; i < exps.size(); ++i)
      g = std::gcd(g, static_cast<long>(exps[i]) * (L / ords[i]));
    chars_.push_back({group_, exps, L / g});
    // odometer, last component fastest
    std::size_t i = exps.size();
    while (i > 0) {
      --i;
      if (++exps[i] < ords[i]) break;
      exps[i] = 0;
      if (i == 0) return;
    }
    if (exps.empty()) return;  // d <= 2: single principal character
  }
}

Cyclotomic h_chi(const DirichletCharacter& chi, std::uint64_t n) {
  long m = chi.order();
  Cyclotomic result = Cyclotomic::integer(m, 1);
  for (const auto& [p, e] : factorize(n)) {
    RootOfUnity u = chi.eval(static_cast<long long>(p));
    if (u.zero) {
      if (e > 1) return Cyclotomic(m);       // h(p^k) = 0 for k >= 2, chi(p) = 0
      result *= Cyclotomic::integer(m, -1);  // h(p) = chi(p) - 1 = -1
    } else if (u.is_one()) {
      return Cyclotomic(m);                  // chi(p) - 1 = 0
    } else {
      Cyclotomic f = Cyclotomic::embed(m, u) - Cyclotomic::integer(m, 1);
      if (e > 1) f *= Cyclotomic::embed(m, u.pow(static_cast<long>(e) - 1));
      result *= f;
    }
  }
  return result;
}

}  // namespace indexdens
