#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "eqf/ir/term.hpp"

namespace eqf::ir {

// A generator of the differential polynomial ring: delta^order applied to a
// variable, or to an opaque function application (lam, s, ...) kept by its
// canonical text.
struct Atom {
  bool opaque = false;
  std::string name;
  int order = 0;
  bool operator<(const Atom& o) const;
  bool operator==(const Atom& o) const { return opaque == o.opaque && name == o.name && order == o.order; }
};

using Mono = std::vector<std::pair<Atom, unsigned>>;

struct MonoOrder {
  bool operator()(const Mono& a, const Mono& b) const;
};

unsigned mono_degree(const Mono& m);

// Integer (or mod p) polynomial over atoms; coefficients are kept in the
// symmetric residue range when p > 0.
class SymPoly {
 public:
  explicit SymPoly(std::uint32_t p = 0) : p_(p) {}
  static SymPoly constant(const mpz_class& c, std::uint32_t p);
  static SymPoly variable(const std::string& name, std::uint32_t p, int order = 0);
  static SymPoly opaque(const Term& t, std::uint32_t p);

  std::uint32_t characteristic() const { return p_; }
  const std::map<Mono, mpz_class, MonoOrder>& terms() const { return terms_; }
  const std::map<std::string, Term>& opaque_defs() const { return defs_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  mpz_class constant_value() const;
  unsigned total_degree() const;
  // total degree counted only over plain atoms whose name is in `names`
  unsigned degree_in(const std::set<std::string>& names) const;
  bool homogeneous_in(const std::set<std::string>& names, unsigned* deg = nullptr) const;
  std::set<std::string> plain_names() const;
  bool has_opaque() const { return !defs_.empty(); }

  SymPoly operator+(const SymPoly& o) const;
  SymPoly operator-(const SymPoly& o) const;
  SymPoly operator*(const SymPoly& o) const;
  SymPoly operator-() const;
  SymPoly scale(const mpz_class& c) const;
  SymPoly pow(unsigned e) const;
  SymPoly& operator+=(const SymPoly& o) { return *this = *this + o; }
  SymPoly& operator*=(const SymPoly& o) { return *this = *this * o; }
  bool operator==(const SymPoly& o) const { return terms_ == o.terms_; }

  SymPoly derive() const;
  // plain atoms (name, k) become delta^k of the replacement
  SymPoly substitute(const std::map<std::string, SymPoly>& m) const;
  // split by the exponents of the named plain order-0 atoms
  std::map<Mono, SymPoly, MonoOrder> coefficients_in(const std::set<std::string>& names) const;
  std::map<Mono, SymPoly, MonoOrder> coefficients_by(const std::function<bool(const Atom&)>& key) const;

  Term to_term() const;
  std::string text() const { return print(to_term()); }

  void add_term(const Mono& m, const mpz_class& c);

 private:
  std::uint32_t p_ = 0;
  std::map<Mono, mpz_class, MonoOrder> terms_;
  std::map<std::string, Term> defs_;
  void absorb_defs(const SymPoly& o);
  mpz_class reduce(const mpz_class& c) const;
};

// Function applications become opaque atoms with canonicalized arguments.
SymPoly to_sympoly(const Term& t, std::uint32_t p);
// canonical form: function arguments canonicalized, arithmetic expanded
Term canonical(const Term& t, std::uint32_t p);

// Polynomial divided by a power of a pivot variable.
struct PivotFraction {
  SymPoly num;
  unsigned exp = 0;
};

// Homogenization: substitute v -> v / pivot^k_v (all derivative orders of v
// via the quotient rule) into f and return num / pivot^exp with the
// smallest exp that clears every denominator.
PivotFraction pivot_substitute(const SymPoly& f, const std::string& pivot, const std::map<std::string, unsigned>& k);

}  // namespace eqf::ir
