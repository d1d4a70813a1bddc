#pragma once

#include "eqf/algebra/matrix.hpp"

namespace eqf::algebra {

// RREF basis of the smallest delta-stable subspace of K^dim containing the
// rows. A delta-stable subspace is defined over the constants, so the basis
// has constant entries. `steps` receives the number of derivative rounds
// performed before the span stopped growing.
std::vector<Vector> delta_closure(const DescPtr& d, const std::vector<Vector>& rows, std::size_t dim,
                                  int* steps = nullptr);

// Basis, with constant entries, of {zeta in C^r : m zeta = 0} where C is the
// constant field: the kernel of the delta closure of the row space.
std::vector<Vector> constant_kernel(const Matrix& m);

// exact p-th root when a is a p-th power (characteristic p)
std::optional<FieldElement> pth_root(const FieldElement& a);

}  // namespace eqf::algebra
