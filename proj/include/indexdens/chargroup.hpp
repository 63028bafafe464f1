#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "indexdens/cyclotomic.hpp"

namespace indexdens {

// (Z/dZ)^* decomposed into cyclic factors with CRT-lifted generators, plus a
// full discrete-log table (fine for the moduli this tool works with).
class UnitGroup {
 public:
  explicit UnitGroup(long d);

  long modulus() const { return d_; }
  long phi() const { return phi_; }
  long exponent() const { return exponent_; }
  const std::vector<long>& generators() const { return gen_; }
  const std::vector<long>& orders() const { return order_; }

  bool is_unit(long long n) const { return unit_[residue(n)]; }
  // Exponent vector of n on the generators; throws for non-units.
  const std::vector<std::int32_t>& dlog(long long n) const;
  long residue(long long n) const {
    long long r = n % d_;
    return static_cast<long>(r < 0 ? r + d_ : r);
  }

 private:
  long d_, phi_, exponent_;
  std::vector<long> gen_, order_;
  std::vector<char> unit_;
  std::vector<std::vector<std::int32_t>> table_;
};

struct DirichletCharacter {
  std::shared_ptr<const UnitGroup> group;
  std::vector<std::int32_t> exps;  // component exponents, exps[i] in [0, order_i)
  long ord = 1;                    // multiplicative order of the character

  long modulus() const { return group->modulus(); }
  long order() const { return ord; }
  bool is_principal() const;

  RootOfUnity eval(long long n) const;
  Complex eval_complex(long long n, mpfr_prec_t prec) const;

  DirichletCharacter conjugate() const;
  DirichletCharacter times(const DirichletCharacter& o) const;

  std::string label() const;

  bool same_as(const DirichletCharacter& o) const {
    return modulus() == o.modulus() && exps == o.exps;
  }
};

class CharacterGroup {
 public:
  explicit CharacterGroup(long d);
  long modulus() const { return group_->modulus(); }
  const std::vector<DirichletCharacter>& all() const { return chars_; }
  const DirichletCharacter& principal() const { return chars_.front(); }
  std::shared_ptr<const UnitGroup> group() const { return group_; }

 private:
  std::shared_ptr<const UnitGroup> group_;
  std::vector<DirichletCharacter> chars_;
};

// Multiplicative coefficient h = mu * chi (Dirichlet convolution), evaluated
// exactly in Z[zeta_ord(chi)]:  h(p^k) = chi(p)^{k-1} (chi(p) - 1).
Cyclotomic h_chi(const DirichletCharacter& chi, std::uint64_t n);

}  // namespace indexdens
