#pragma once

#include <set>
#include <string>
#include <vector>

#include "eqf/ir/formula.hpp"
#include "eqf/oracle/oracle.hpp"

namespace eqf::passes {

// Term equations with lam / lamN terms become Boolean combinations of
// lambda-tame formulas. Accepts any Boolean combination of eq0 atoms.
ir::Formula eliminate_lambda_terms(const ir::Formula& f);

// phi'(x, y0, y) <-> y0 = 0 or phi(x, y / y0) for a lambda-tame phi.
ir::Formula homogenize_lambda(const ir::Formula& f, const std::set<std::string>& ys, const std::string& pivot);
ir::Fml homogenize_lambda(const ir::Fml& f, const std::set<std::string>& ys, const std::string& pivot,
                          std::uint32_t p);

// Substitution of function-free terms for variables into a lambda-tame
// formula; throws Error("internal-error") if the degree changes.
ir::Formula substitute_tame(const ir::Formula& f, const ir::TermMap& m);

struct ScfInstance {
  ir::Formula psi;
  std::vector<std::string> coefficient_names;  // b'
  oracle::Point coefficients;                  // values of b'
  std::size_t basis_size = 0;                  // N'
  std::size_t coefficient_rank = 0;            // K^p rank of the coefficient values
  std::size_t subsets = 0, skipped = 0;        // minors J, identically zero d^J
};

// phi(x; y) a single block whose polynomials involve x only through x^p;
// the instance y := b becomes a lambda-tame formula of degree one less in
// (x, b', y), with y still bound to b.
ScfInstance reduce_instance_scf(const ir::Formula& f, const std::set<std::string>& params, const oracle::Point& b,
                                const oracle::Oracle& o);

}  // namespace eqf::passes
