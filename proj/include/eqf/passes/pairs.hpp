#pragma once

#include <optional>
#include <string>
#include <vector>

#include "eqf/algebra/matrix.hpp"
#include "eqf/exterior/plucker.hpp"
#include "eqf/ir/formula.hpp"
#include "eqf/ir/shape.hpp"
#include "eqf/oracle/oracle.hpp"

namespace eqf::passes {

// Existential block over P^(r s) for a family bihomogeneous in (u, v):
// every q(xi_{*,j}, xi_{i,*}). Names of xi come from `names`.
ir::TameInfo segre(const std::vector<std::string>& u, const std::vector<std::string>& v,
                   const std::vector<ir::Term>& polys, ir::NameSupply& names, std::uint32_t p = 0);

// Tame formulas, or the atoms true / false.
ir::Formula combine_tame(const ir::Formula& a, const ir::Formula& b, bool conjunction);

ir::Formula lambdaP_to_tame(const ir::Formula& f);

// throws Error("degree-too-small") when d is below the zeta-degree
ir::Formula linearize_tame(const ir::Formula& f, int d);

struct DegreeSchedule {
  std::vector<int> degrees;
  std::vector<std::vector<bool>> verdicts;
  int chosen = -1;  // first degree agreeing with its successor at every sample
};
DegreeSchedule linearize_schedule(const ir::Formula& f, const oracle::Oracle& o, const std::vector<oracle::Point>& pts,
                                  int max_degree);

// graded monomials in `vars` variables: 1, x1..xs, then degree 2, ...; the first n
std::vector<std::vector<unsigned>> monomial_enumeration(std::size_t vars, std::size_t n);

struct Annihilator {
  std::size_t dim = 0;
  std::vector<algebra::Vector> basis;
  std::optional<exterior::PluckerVector> plucker;
};
Annihilator annihilator(const oracle::Oracle& o, const std::vector<algebra::FieldElement>& a, std::size_t n);

// basis with constant entries of the smallest delta-closed span of the vectors
std::vector<algebra::Vector> e_hull(const oracle::Oracle& o, const std::vector<algebra::Vector>& vs,
                                    int* steps = nullptr);

struct SliceClosure {
  std::vector<std::vector<unsigned>> monomials;
  std::vector<algebra::Vector> generators;  // constant entries, indexed like monomials
  int k = 0;
};
// degree-d slice of the ideal of the polys at the point, closed under
// coefficientwise derivation; throws Error("inhomogeneous") on mixed degrees
SliceClosure differential_ideal_closure(const oracle::Oracle& o, const std::vector<std::string>& zeta,
                                        const std::vector<ir::Term>& polys, const oracle::Point& pt, int d);

struct SimpleLinearReport {
  bool lhs = false;            // nonzero constant zeta with zeta^T a = 0
  bool minors_vanish = false;  // all maximal minors
  std::vector<bool> dep_samples;
  bool implication_holds = true;
};
SimpleLinearReport simple_linear_checks(const oracle::Oracle& o, const algebra::Matrix& a, int samples,
                                        std::uint64_t seed);

// Decision through the delta closure of the linearized slice.
bool eval_tame_kolchin(const oracle::Oracle& o, const ir::Formula& f, const oracle::Point& pt,
                       int* rounds = nullptr);

}  // namespace eqf::passes
