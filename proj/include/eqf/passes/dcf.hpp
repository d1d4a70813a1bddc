#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "eqf/ir/formula.hpp"
#include "eqf/oracle/oracle.hpp"

namespace eqf::passes {

// s-terms of a Boolean combination of eq0 atoms become Boolean
// combinations of delta-tame formulas.
ir::Formula eliminate_s_terms(const ir::Formula& f);

// phi'(x0, x) <-> x0 = 0 or phi(x1 / x0^k1, ..); variables outside k stay fixed.
ir::Formula homogenize_delta(const ir::Formula& f, const std::map<std::string, unsigned>& k, const std::string& pivot);
ir::Fml homogenize_delta(const ir::Fml& f, const std::map<std::string, unsigned>& k, const std::string& pivot,
                         std::uint32_t p);

// lambda-tame scf formula to a delta-tame dcf formula of the same characteristic
ir::Formula lambda_to_delta(const ir::Formula& f);

ir::Formula to_s_formula(const ir::Formula& f);
ir::Formula from_s_formula(const ir::Formula& f);

struct DcfInstance {
  ir::Formula psi;
  std::vector<std::string> coefficient_names;
  oracle::Point coefficients;
  std::size_t side_conditions = 0;  // conjuncts q_i = 0, i >= 1
};

// phi = existsPth z q(x; y) psi with every x-monomial of q a p-th power
DcfInstance reduce_instance_dcf(const ir::Formula& f, const std::set<std::string>& params, const oracle::Point& b,
                                const oracle::Oracle& o);

}  // namespace eqf::passes
