#include "eqf/ir/term.hpp"

#include "eqf/error.hpp"

namespace eqf::ir {

namespace {

Term make(TermNode n) { return std::make_shared<const TermNode>(std::move(n)); }

}  // namespace

Term var(const std::string& name) {
  TermNode n;
  n.kind = TermKind::Var;
  n.name = name;
  return make(std::move(n));
}

Term integer(const mpz_class& v) {
  TermNode n;
  n.kind = TermKind::Int;
  n.value = v;
  return make(std::move(n));
}

Term integer(long v) { return integer(mpz_class(v)); }

Term add(std::vector<Term> xs) {
  if (xs.empty()) return integer(0);
  if (xs.size() == 1) return xs[0];
  TermNode n;
  n.kind = TermKind::Add;
  n.args = std::move(xs);
  return make(std::move(n));
}

Term mul(std::vector<Term> xs) {
  if (xs.empty()) return integer(1);
  if (xs.size() == 1) return xs[0];
  TermNode n;
  n.kind = TermKind::Mul;
  n.args = std::move(xs);
  return make(std::move(n));
}

Term neg(Term t) {
  TermNode n;
  n.kind = TermKind::Neg;
  n.args = {std::move(t)};
  return make(std::move(n));
}

Term sub(Term a, Term b) { return add({std::move(a), neg(std::move(b))}); }

Term power(Term t, unsigned e) {
  TermNode n;
  n.kind = TermKind::Pow;
  n.exponent = e;
  n.args = {std::move(t)};
  return make(std::move(n));
}

Term lam(int nn, int i, std::vector<Term> args) {
  if (nn < 1 || i < 1 || i > nn || static_cast<int>(args.size()) != nn + 1)
    throw Error("arity-error", "lam " + std::to_string(nn) + " " + std::to_string(i));
  TermNode n;
  n.kind = TermKind::Lam;
  n.n = nn;
  n.i = i;
  n.args = std::move(args);
  return make(std::move(n));
}

Term lam_n(int N, int nn, int i, std::vector<Term> args) {
  if (N < 1 || nn < 1 || i < 1 || i > nn || static_cast<int>(args.size()) != N * (nn + 1))
    throw Error("arity-error", "lamN " + std::to_string(N) + " " + std::to_string(nn));
  TermNode n;
  n.kind = TermKind::LamN;
  n.N = N;
  n.n = nn;
  n.i = i;
  n.args = std::move(args);
  return make(std::move(n));
}

Term lam_p(int nn, int i, std::vector<Term> args) {
  if (nn < 1 || i < 1 || i > nn || static_cast<int>(args.size()) != nn + 1)
    throw Error("arity-error", "lamP " + std::to_string(nn) + " " + std::to_string(i));
  TermNode n;
  n.kind = TermKind::LamP;
  n.n = nn;
  n.i = i;
  n.args = std::move(args);
  return make(std::move(n));
}

Term deriv(Term t) {
  TermNode n;
  n.kind = TermKind::Deriv;
  n.args = {std::move(t)};
  return make(std::move(n));
}

Term deriv_n(Term t, int k) {
  for (int j = 0; j < k; ++j) t = deriv(t);
  return t;
}

Term sroot(Term t) {
  TermNode n;
  n.kind = TermKind::Root;
  n.args = {std::move(t)};
  return make(std::move(n));
}

namespace {

void print_to(const Term& t, std::string& out) {
  auto list = [&](const std::string& head) {
    out += "(" + head;
    for (const auto& a : t->args) {
      out += " ";
      print_to(a, out);
    }
    out += ")";
  };
  switch (t->kind) {
    case TermKind::Var: out += t->name; break;
    case TermKind::Int: out += t->value.get_str(); break;
    case TermKind::Add: list("+"); break;
    case TermKind::Mul: list("*"); break;
    case TermKind::Neg: list("-"); break;
    case TermKind::Pow:
      out += "(^ ";
      print_to(t->args[0], out);
      out += " " + std::to_string(t->exponent) + ")";
      break;
    case TermKind::Lam: list("lam " + std::to_string(t->n) + " " + std::to_string(t->i)); break;
    case TermKind::LamN:
      list("lamN " + std::to_string(t->N) + " " + std::to_string(t->n) + " " + std::to_string(t->i));
      break;
    case TermKind::LamP: list("lamP " + std::to_string(t->n) + " " + std::to_string(t->i)); break;
    case TermKind::Deriv: list("d"); break;
    case TermKind::Root: list("s"); break;
  }
}

}  // namespace

std::string print(const Term& t) {
  std::string s;
  print_to(t, s);
  return s;
}

bool equal(const Term& a, const Term& b) {
  if (a == b) return true;
  if (a->kind != b->kind || a->name != b->name || a->value != b->value || a->exponent != b->exponent ||
      a->N != b->N || a->n != b->n || a->i != b->i || a->args.size() != b->args.size())
    return false;
  for (std::size_t k = 0; k < a->args.size(); ++k)
    if (!equal(a->args[k], b->args[k])) return false;
  return true;
}

void collect_vars(const Term& t, std::set<std::string>& out) {
  if (t->kind == TermKind::Var) out.insert(t->name);
  for (const auto& a : t->args) collect_vars(a, out);
}

bool contains_kind(const Term& t, TermKind k) {
  if (t->kind == k) return true;
  for (const auto& a : t->args)
    if (contains_kind(a, k)) return true;
  return false;
}

bool is_function_free(const Term& t) {
  return !contains_kind(t, TermKind::Lam) && !contains_kind(t, TermKind::LamN) && !contains_kind(t, TermKind::LamP) &&
         !contains_kind(t, TermKind::Root);
}

int count_kind(const Term& t, TermKind k) {
  int c = t->kind == k ? 1 : 0;
  for (const auto& a : t->args) c += count_kind(a, k);
  return c;
}

Term substitute(const Term& t, const TermMap& m) {
  if (t->kind == TermKind::Var) {
    auto it = m.find(t->name);
    return it == m.end() ? t : it->second;
  }
  if (t->args.empty()) return t;
  TermNode n = *t;
  bool changed = false;
  for (auto& a : n.args) {
    Term b = substitute(a, m);
    changed = changed || b != a;
    a = b;
  }
  return changed ? make(std::move(n)) : t;
}

Term replace_subterm(const Term& t, const Term& pattern, const Term& by) {
  if (equal(t, pattern)) return by;
  if (t->args.empty()) return t;
  TermNode n = *t;
  bool changed = false;
  for (auto& a : n.args) {
    Term b = replace_subterm(a, pattern, by);
    changed = changed || b != a;
    a = b;
  }
  return changed ? make(std::move(n)) : t;
}

}  // namespace eqf::ir
