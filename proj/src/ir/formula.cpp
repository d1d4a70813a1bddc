#include "eqf/ir/formula.hpp"

#include "eqf/error.hpp"
#include "eqf/algebra/scalar.hpp"
#include "eqf/ir/sympoly.hpp"

namespace eqf::ir {

std::string language_name(Language l) {
  switch (l) {
    case Language::Scf: return "scf";
    case Language::Dcf: return "dcf";
    case Language::Pair: return "pair";
  }
  return "?";
}

std::optional<Language> language_from_name(const std::string& s) {
  if (s == "scf") return Language::Scf;
  if (s == "dcf") return Language::Dcf;
  if (s == "pair") return Language::Pair;
  return std::nullopt;
}

namespace {

Fml make(FormulaNode n) { return std::make_shared<const FormulaNode>(std::move(n)); }

Fml atom(FKind k, std::vector<Term> ts, int N = 0, int n = 0) {
  FormulaNode f;
  f.kind = k;
  f.terms = std::move(ts);
  f.N = N;
  f.n = n;
  return make(std::move(f));
}

}  // namespace

bool is_atom(const Fml& f) {
  switch (f->kind) {
    case FKind::And:
    case FKind::Or:
    case FKind::Not:
    case FKind::ExistsP:
    case FKind::ExistsPth: return false;
    default: return true;
  }
}

Fml f_true() { return atom(FKind::True, {}); }
Fml f_false() { return atom(FKind::False, {}); }
Fml eq0(Term t) { return atom(FKind::Eq0, {std::move(t)}); }

Fml pdep(std::vector<Term> ts) {
  if (ts.empty()) throw Error("arity-error", "pdep needs at least one term");
  int n = static_cast<int>(ts.size());
  return atom(FKind::Pdep, std::move(ts), 0, n);
}

Fml pdep_n(int N, std::vector<Term> stacked) {
  if (N < 1 || stacked.empty() || stacked.size() % N != 0) throw Error("arity-error", "pdepN shape");
  int n = static_cast<int>(stacked.size()) / N;
  return atom(FKind::PdepN, std::move(stacked), N, n);
}

Fml dep(std::vector<Term> ts) {
  if (ts.empty()) throw Error("arity-error", "dep needs at least one term");
  int n = static_cast<int>(ts.size());
  return atom(FKind::Dep, std::move(ts), 0, n);
}

Fml in_p(Term t) { return atom(FKind::InP, {std::move(t)}); }

Fml nonzero(std::vector<Term> ts) {
  if (ts.empty()) throw Error("arity-error", "nonzero needs at least one term");
  return atom(FKind::Nonzero, std::move(ts));
}

static Fml junction(FKind k, std::vector<Fml> ks) {
  if (ks.empty()) return k == FKind::And ? f_true() : f_false();
  if (ks.size() == 1) return ks[0];
  FormulaNode n;
  n.kind = k;
  n.kids = std::move(ks);
  return make(std::move(n));
}

Fml f_and(std::vector<Fml> ks) { return junction(FKind::And, std::move(ks)); }
Fml f_or(std::vector<Fml> ks) { return junction(FKind::Or, std::move(ks)); }

Fml f_not(Fml k) {
  FormulaNode n;
  n.kind = FKind::Not;
  n.kids = {std::move(k)};
  return make(std::move(n));
}

Fml exists_p(std::vector<std::string> zs, Fml body) {
  if (zs.empty()) throw Error("arity-error", "existsP needs at least one variable");
  FormulaNode n;
  n.kind = FKind::ExistsP;
  n.bound = std::move(zs);
  n.kids = {std::move(body)};
  return make(std::move(n));
}

Fml exists_pth(std::string z, Term q, Fml body) {
  FormulaNode n;
  n.kind = FKind::ExistsPth;
  n.bound = {std::move(z)};
  n.terms = {std::move(q)};
  n.kids = {std::move(body)};
  return make(std::move(n));
}

Fml ldef(const std::vector<Term>& q) {
  std::vector<Term> tail(q.begin() + 1, q.end());
  return f_and({f_not(pdep(tail)), pdep(q)});
}

namespace {

void print_to(const Fml& f, std::string& out) {
  auto terms = [&](const std::string& head) {
    out += "(" + head;
    for (const auto& t : f->terms) out += " " + print(t);
    out += ")";
  };
  auto kids = [&](const std::string& head) {
    out += "(" + head;
    for (const auto& k : f->kids) {
      out += " ";
      print_to(k, out);
    }
    out += ")";
  };
  switch (f->kind) {
    case FKind::Eq0: terms("eq0"); break;
    case FKind::Pdep: terms("pdep " + std::to_string(f->n)); break;
    case FKind::PdepN: terms("pdepN " + std::to_string(f->N) + " " + std::to_string(f->n)); break;
    case FKind::Dep: terms("dep " + std::to_string(f->n)); break;
    case FKind::InP: terms("P"); break;
    case FKind::Nonzero: terms("nonzero"); break;
    case FKind::True: out += "true"; break;
    case FKind::False: out += "false"; break;
    case FKind::And: kids("and"); break;
    case FKind::Or: kids("or"); break;
    case FKind::Not: kids("not"); break;
    case FKind::ExistsP: {
      out += "(existsP (";
      for (std::size_t i = 0; i < f->bound.size(); ++i) out += (i ? " " : "") + f->bound[i];
      out += ") ";
      print_to(f->kids[0], out);
      out += ")";
      break;
    }
    case FKind::ExistsPth:
      out += "(existsPth " + f->bound[0] + " " + print(f->terms[0]) + " ";
      print_to(f->kids[0], out);
      out += ")";
      break;
  }
}

}  // namespace

std::string print(const Fml& f) {
  std::string s;
  print_to(f, s);
  return s;
}

std::string print(const Formula& f) {
  return ";; lang: " + language_name(f.lang) + "  p: " + std::to_string(f.p) + "\n" + print(f.root) + "\n";
}

bool equal(const Fml& a, const Fml& b) {
  if (a == b) return true;
  if (a->kind != b->kind || a->N != b->N || a->n != b->n || a->bound != b->bound ||
      a->terms.size() != b->terms.size() || a->kids.size() != b->kids.size())
    return false;
  for (std::size_t i = 0; i < a->terms.size(); ++i)
    if (!equal(a->terms[i], b->terms[i])) return false;
  for (std::size_t i = 0; i < a->kids.size(); ++i)
    if (!equal(a->kids[i], b->kids[i])) return false;
  return true;
}

void free_vars(const Fml& f, std::set<std::string>& out) {
  std::set<std::string> inner;
  for (const auto& t : f->terms) collect_vars(t, inner);
  for (const auto& k : f->kids) free_vars(k, inner);
  for (const auto& b : f->bound) inner.erase(b);
  out.insert(inner.begin(), inner.end());
}

void all_names(const Fml& f, std::set<std::string>& out) {
  for (const auto& t : f->terms) collect_vars(t, out);
  for (const auto& k : f->kids) all_names(k, out);
  out.insert(f->bound.begin(), f->bound.end());
}

bool contains_term_kind(const Fml& f, TermKind k) {
  for (const auto& t : f->terms)
    if (contains_kind(t, k)) return true;
  for (const auto& c : f->kids)
    if (contains_term_kind(c, k)) return true;
  return false;
}

int count_kind(const Fml& f, FKind k) {
  int c = f->kind == k ? 1 : 0;
  for (const auto& x : f->kids) c += count_kind(x, k);
  return c;
}

Fml map_terms(const Fml& f, const std::function<Term(const Term&)>& fn) {
  FormulaNode n = *f;
  for (auto& t : n.terms) t = fn(t);
  for (auto& k : n.kids) k = map_terms(k, fn);
  return make(std::move(n));
}

namespace {

Fml subst_rec(const Fml& f, const TermMap& m, NameSupply& names) {
  if (m.empty()) return f;
  FormulaNode n = *f;
  if (!f->bound.empty()) {
    TermMap inner = m;
    for (const auto& b : f->bound) inner.erase(b);
    std::set<std::string> incoming;
    for (const auto& [k, v] : inner) collect_vars(v, incoming);
    TermMap rename;
    for (auto& b : n.bound)
      if (incoming.count(b)) {
        std::string nb = names.fresh(b);
        rename[b] = var(nb);
        b = nb;
      }
    if (!rename.empty()) {
      for (auto& t : n.terms) t = ir::substitute(t, rename);
      for (auto& k : n.kids) k = subst_rec(k, rename, names);
    }
    for (auto& t : n.terms) t = ir::substitute(t, inner);
    for (auto& k : n.kids) k = subst_rec(k, inner, names);
    return make(std::move(n));
  }
  for (auto& t : n.terms) t = ir::substitute(t, m);
  for (auto& k : n.kids) k = subst_rec(k, m, names);
  return make(std::move(n));
}

}  // namespace

Fml substitute(const Fml& f, const TermMap& m) {
  NameSupply names;
  names.reserve(f);
  for (const auto& [k, v] : m) {
    names.reserve(k);
    std::set<std::string> vs;
    collect_vars(v, vs);
    for (const auto& s : vs) names.reserve(s);
  }
  return subst_rec(f, m, names);
}

Fml canonicalize(const Fml& f, std::uint32_t p) {
  return map_terms(f, [p](const Term& t) { return canonical(t, p); });
}

namespace {

Fml nnf(const Fml& f, bool negate) {
  switch (f->kind) {
    case FKind::And:
    case FKind::Or: {
      FKind k = f->kind;
      if (negate) k = k == FKind::And ? FKind::Or : FKind::And;
      std::vector<Fml> out;
      for (const auto& c : f->kids) {
        Fml g = nnf(c, negate);
        if (g->kind == k)
          out.insert(out.end(), g->kids.begin(), g->kids.end());
        else
          out.push_back(g);
      }
      return junction(k, std::move(out));
    }
    case FKind::Not: return nnf(f->kids[0], !negate);
    case FKind::True: return negate ? f_false() : f;
    case FKind::False: return negate ? f_true() : f;
    default: return negate ? f_not(f) : f;
  }
}

}  // namespace

Fml boolean_normal(const Fml& f) {
  Fml g = nnf(f, false);
  return equal(g, f) ? f : g;
}

std::string NameSupply::fresh(const std::string& prefix) {
  int& k = next_[prefix];
  for (;;) {
    std::string s = prefix + "_" + std::to_string(k++);
    if (!used_.count(s)) {
      used_.insert(s);
      return s;
    }
  }
}

namespace {

bool term_legal(const Term& t, Language l, std::string& bad) {
  switch (t->kind) {
    case TermKind::Lam:
    case TermKind::LamN:
      if (l != Language::Scf) bad = t->kind == TermKind::Lam ? "lam" : "lamN";
      break;
    case TermKind::Deriv:
    case TermKind::Root:
      if (l != Language::Dcf) bad = t->kind == TermKind::Deriv ? "d" : "s";
      break;
    case TermKind::LamP:
      if (l != Language::Pair) bad = "lamP";
      break;
    default: break;
  }
  if (!bad.empty()) return false;
  for (const auto& a : t->args)
    if (!term_legal(a, l, bad)) return false;
  return true;
}

void check_lang(const Fml& f, Language l) {
  std::string bad;
  switch (f->kind) {
    case FKind::Pdep:
    case FKind::PdepN:
      if (l != Language::Scf) bad = f->kind == FKind::Pdep ? "pdep" : "pdepN";
      break;
    case FKind::Dep:
    case FKind::InP:
    case FKind::ExistsP:
      if (l != Language::Pair) bad = f->kind == FKind::Dep ? "dep" : f->kind == FKind::InP ? "P" : "existsP";
      break;
    case FKind::ExistsPth:
      if (l != Language::Dcf) bad = "existsPth";
      break;
    default: break;
  }
  if (!bad.empty()) throw Error("language-error", bad + " is not allowed in " + language_name(l));
  for (const auto& t : f->terms)
    if (!term_legal(t, l, bad)) throw Error("language-error", bad + " is not allowed in " + language_name(l));
  for (const auto& k : f->kids) check_lang(k, l);
}

void collect_binders(const Fml& f, std::vector<std::string>& out) {
  out.insert(out.end(), f->bound.begin(), f->bound.end());
  for (const auto& k : f->kids) collect_binders(k, out);
}

}  // namespace

void validate(const Formula& f) {
  if (f.p != 0 && !algebra::is_prime(f.p)) throw Error("language-error", "characteristic must be 0 or prime");
  if ((f.lang == Language::Scf || f.lang == Language::Dcf) && f.p == 0)
    throw Error("language-error", language_name(f.lang) + " needs a prime characteristic");
  if (f.lang == Language::Pair && f.p != 0) throw Error("language-error", "pair needs characteristic 0");
  check_lang(f.root, f.lang);
  std::vector<std::string> binders;
  collect_binders(f.root, binders);
  std::set<std::string> seen, fv;
  free_vars(f.root, fv);
  for (const auto& b : binders) {
    if (!seen.insert(b).second) throw Error("hygiene-error", "variable " + b + " is bound twice");
    if (fv.count(b)) throw Error("hygiene-error", "variable " + b + " is both bound and free");
  }
}

}  // namespace eqf::ir
