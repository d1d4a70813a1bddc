#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "eqf/ir/term.hpp"

namespace eqf::ir {

enum class Language { Scf, Dcf, Pair };

std::string language_name(Language l);
std::optional<Language> language_from_name(const std::string& s);

enum class FKind { Eq0, Pdep, PdepN, Dep, InP, Nonzero, True, False, And, Or, Not, ExistsP, ExistsPth };

struct FormulaNode;
using Fml = std::shared_ptr<const FormulaNode>;

struct FormulaNode {
  FKind kind = FKind::True;
  // Pdep, Dep: n; PdepN: (N, n)
  int N = 0, n = 0;
  // Pdep/Dep: n terms; PdepN: n vectors of length N, stacked vector by vector;
  // Nonzero: the tuple asserted to be nonzero (some entry nonzero);
  // ExistsPth: {q}
  std::vector<Term> terms;
  std::vector<Fml> kids;
  std::vector<std::string> bound;
};

bool is_atom(const Fml& f);

Fml f_true();
Fml f_false();
Fml eq0(Term t);
Fml pdep(std::vector<Term> ts);
Fml pdep_n(int N, std::vector<Term> stacked);
Fml dep(std::vector<Term> ts);
Fml in_p(Term t);
Fml nonzero(std::vector<Term> ts);
// with fewer than two kids the result collapses (empty: true / false)
Fml f_and(std::vector<Fml> ks);
Fml f_or(std::vector<Fml> ks);
Fml f_not(Fml k);
Fml exists_p(std::vector<std::string> zs, Fml body);
// exists z. z^p = q and body
Fml exists_pth(std::string z, Term q, Fml body);
// ldef(q0..qn) = not pdep_n(q1..qn) and pdep_{n+1}(q0..qn)
Fml ldef(const std::vector<Term>& q);

struct Formula {
  Language lang = Language::Scf;
  std::uint32_t p = 0;
  Fml root;
};

std::string print(const Fml& f);
// header line, newline, formula, newline
std::string print(const Formula& f);
bool equal(const Fml& a, const Fml& b);

void free_vars(const Fml& f, std::set<std::string>& out);
void all_names(const Fml& f, std::set<std::string>& out);
bool contains_term_kind(const Fml& f, TermKind k);
int count_kind(const Fml& f, FKind k);

Fml map_terms(const Fml& f, const std::function<Term(const Term&)>& fn);
// capture avoiding; bound variables are never replaced
Fml substitute(const Fml& f, const TermMap& m);
// canonical polynomial form of every term
Fml canonicalize(const Fml& f, std::uint32_t p);
// negation normal form with flattened and/or; atoms and quantifier blocks are leaves
Fml boolean_normal(const Fml& f);

class NameSupply {
 public:
  NameSupply() = default;
  explicit NameSupply(std::set<std::string> used) : used_(std::move(used)) {}
  void reserve(const std::string& s) { used_.insert(s); }
  void reserve(const Fml& f) { all_names(f, used_); }
  std::string fresh(const std::string& prefix);

 private:
  std::set<std::string> used_;
  std::map<std::string, int> next_;
};

// Throws Error("language-error") for symbols illegal in the tag and
// Error("hygiene-error") for duplicate or captured bound names.
void validate(const Formula& f);

// Throws Error("syntax-error"|"arity-error"|"language-error"|"hygiene-error").
// Syntax errors carry "line:col: " in the message.
Formula parse_formula(const std::string& text);
Fml parse_body(const std::string& text);
Term parse_term(const std::string& text);

}  // namespace eqf::ir
