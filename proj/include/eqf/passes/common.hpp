#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "eqf/ir/formula.hpp"
#include "eqf/ir/sympoly.hpp"
#include "eqf/oracle/oracle.hpp"

namespace eqf::passes {

using ir::Fml;
using ir::Formula;
using ir::SymPoly;
using ir::Term;

using SymMatrix = std::vector<std::vector<SymPoly>>;

SymPoly sym_det(const SymMatrix& m, std::uint32_t p);
SymMatrix sym_adjugate(const SymMatrix& m, std::uint32_t p);
std::vector<SymPoly> sym_mul(const SymMatrix& m, const std::vector<SymPoly>& v, std::uint32_t p);

// rows delta^i(q_j), 0 <= i < n
SymMatrix wronskian_matrix(const std::vector<SymPoly>& q);

// Leftmost-innermost subterm of one of the given kinds: the first such
// subterm in print order whose arguments contain none of the kinds.
std::optional<Term> innermost(const Term& t, const std::vector<ir::TermKind>& kinds);
std::optional<Term> innermost(const Fml& f, const std::vector<ir::TermKind>& kinds);

// lexicographic k-subsets of {0..n-1}
std::vector<std::vector<std::size_t>> k_subsets(std::size_t n, std::size_t k);

Term canon(const Term& t, std::uint32_t p);
Fml canon(const Fml& f, std::uint32_t p);

// A coordinate value as a polynomial: prime-field values become integer
// constants, anything else a fresh parameter recorded in (names, values).
SymPoly coefficient_poly(const algebra::FieldElement& c, std::uint32_t p, ir::NameSupply& supply,
                         std::vector<std::string>& names, oracle::Point& values);

// Throws Error("shape-violation") unless f classifies with the given shape kind.
void require_shape(const Formula& f, const std::string& kind);

}  // namespace eqf::passes
