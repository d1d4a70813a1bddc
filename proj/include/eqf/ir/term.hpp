#pragma once

#include <gmpxx.h>

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace eqf::ir {

enum class TermKind { Var, Int, Add, Mul, Neg, Pow, Lam, LamN, Deriv, Root, LamP };

struct TermNode;
using Term = std::shared_ptr<const TermNode>;

struct TermNode {
  TermKind kind = TermKind::Int;
  std::string name;
  mpz_class value;
  unsigned exponent = 0;
  // Lam: (n, i); LamN: (N, n, i); LamP: (n, i)
  int N = 0, n = 0, i = 0;
  std::vector<Term> args;
};

Term var(const std::string& name);
Term integer(const mpz_class& v);
Term integer(long v);
// n-ary; with fewer than two summands/factors the result collapses
Term add(std::vector<Term> xs);
Term mul(std::vector<Term> xs);
Term neg(Term t);
Term sub(Term a, Term b);
Term power(Term t, unsigned e);
Term lam(int n, int i, std::vector<Term> args);
Term lam_n(int N, int n, int i, std::vector<Term> args);
Term lam_p(int n, int i, std::vector<Term> args);
Term deriv(Term t);
Term deriv_n(Term t, int k);
Term sroot(Term t);

std::string print(const Term& t);
bool equal(const Term& a, const Term& b);

void collect_vars(const Term& t, std::set<std::string>& out);
bool contains_kind(const Term& t, TermKind k);
// free of lam, lamN, lamP, s
bool is_function_free(const Term& t);
int count_kind(const Term& t, TermKind k);

using TermMap = std::map<std::string, Term>;
Term substitute(const Term& t, const TermMap& m);
// replace every subterm structurally equal to `pattern` by `by`
Term replace_subterm(const Term& t, const Term& pattern, const Term& by);

}  // namespace eqf::ir
