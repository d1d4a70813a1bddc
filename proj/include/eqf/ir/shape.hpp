#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "eqf/ir/formula.hpp"

namespace eqf::ir {

struct Shape {
  std::string kind;
  int degree = -1;       // lambda-tame, lambdaP, tame (zeta degree)
  int quantifiers = -1;  // delta-tame
  int r = -1, k = -1;    // tame family
  int equations = -1;    // polynomial-system
  std::vector<Shape> leaves;
  nlohmann::json json() const;
};

Shape classify(const Formula& f);

// A block  pdep_n(q1..qn) or (ldef(q0..qn) and psi(lam(q0..qn)))
// (pdepN/lamN when generalized, dep/lamP in the pair language) with every
// matching lambda application in psi abstracted to a fresh variable z_i.
struct LambdaBlock {
  bool generalized = false;
  bool pair = false;
  int N = 1, n = 0;
  std::vector<Term> q;  // q0..qn, each q_j of length N stacked
  std::vector<std::string> z;
  Fml body;
};

// f must be canonical; names receives the abstraction variables
std::optional<LambdaBlock> match_lambda_block(const Fml& f, NameSupply& names, bool pair);
// rebuild the block, replacing z_i by the lambda applications
Fml build_lambda_block(const LambdaBlock& b);
// the lambda application for coordinate i (1-based)
Term block_lambda(const LambdaBlock& b, int i);

std::optional<int> lambda_tame_degree(const Fml& f, std::uint32_t p);
std::optional<int> lambda_p_degree(const Fml& f);
std::optional<int> delta_tame_count(const Fml& f);

struct TameInfo {
  std::vector<std::string> zeta;
  std::vector<Term> polys;
  int degree = 0;  // max zeta degree
  bool linear = false;
};
std::optional<TameInfo> tame_info(const Fml& f, std::uint32_t p);
Fml build_tame(const std::vector<std::string>& zeta, const std::vector<Term>& polys);

// conjunction of eq0 atoms (and true/false) over function-free terms
bool is_polynomial_system(const Fml& f, bool allow_deriv);
// Every s(r) subterm is accompanied by a conjunct eq0(d r) at top level.
bool is_s_formula(const Fml& f, std::uint32_t p);

}  // namespace eqf::ir
