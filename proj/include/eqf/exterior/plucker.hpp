#pragma once

#include <vector>

#include "eqf/algebra/matrix.hpp"

namespace eqf::exterior {

using algebra::DescPtr;
using algebra::FieldElement;
using algebra::Vector;

using Subset = std::vector<std::size_t>;  // sorted, 0-based

// all k-subsets of {0..n-1} in lexicographic order
std::vector<Subset> subsets(std::size_t n, std::size_t k);
std::size_t subset_index(const Subset& s, std::size_t n);
std::size_t binomial(std::size_t n, std::size_t k);

struct PluckerVector {
  DescPtr field;
  std::size_t n = 0, k = 0;
  Vector coords;  // indexed like subsets(n, k)

  bool is_zero() const;
  PluckerVector scaled(const FieldElement& c) const;
  bool operator==(const PluckerVector& o) const { return n == o.n && k == o.k && coords == o.coords; }
};

PluckerVector wedge(const DescPtr& d, const std::vector<Vector>& vs);

// Interior product with the basis covector e_I, |I| = k-1:
//   (e_I _| zeta)_j = (-1)^#{i in I : i > j} zeta_{I u {j}}  for j not in I, else 0.
// The sign makes the coordinate the minor with column j placed after the columns I.
Vector contract(const Subset& e, const PluckerVector& zeta);

// zeta ^ w for a vector w, a (k+1)-vector; e_J ^ e_l = (-1)^#{m in J : m > l} e_{J u {l}}
PluckerVector wedge_vector(const PluckerVector& zeta, const Vector& w);

bool is_decomposable(const PluckerVector& zeta);
std::vector<Vector> recover_subspace(const PluckerVector& zeta);

// Grassmannian equations in the coordinates zeta_J: one quadric per pair
// (I, L) with |I| = k-1, |L| = k+1, as signed products of coordinate indices.
struct QuadraticTerm {
  int sign;
  std::size_t a, b;
};
std::vector<std::vector<QuadraticTerm>> grassmannian_equations(std::size_t n, std::size_t k);

}  // namespace eqf::exterior
