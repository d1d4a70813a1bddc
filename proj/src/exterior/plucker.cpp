#include "eqf/exterior/plucker.hpp"

#include <algorithm>

#include "eqf/error.hpp"

namespace eqf::exterior {

using algebra::Matrix;

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::vector<Subset> subsets(std::size_t n, std::size_t k) {
  std::vector<Subset> out;
  if (k > n) return out;
  Subset s(k);
  for (std::size_t i = 0; i < k; ++i) s[i] = i;
  while (true) {
    out.push_back(s);
    std::size_t i = k;
    while (i > 0 && s[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++s[i - 1];
    for (std::size_t j = i; j < k; ++j) s[j] = s[j - 1] + 1;
  }
  return out;
}

std::size_t subset_index(const Subset& s, std::size_t n) {
  // rank in lexicographic order
  std::size_t k = s.size(), idx = 0, prev = 0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t v = (i == 0 ? 0 : prev + 1); v < s[i]; ++v) idx += binomial(n - v - 1, k - i - 1);
    prev = s[i];
  }
  return idx;
}

bool PluckerVector::is_zero() const {
  return std::all_of(coords.begin(), coords.end(), [](const FieldElement& x) { return x.is_zero(); });
}

PluckerVector PluckerVector::scaled(const FieldElement& c) const {
  PluckerVector r = *this;
  for (auto& x : r.coords) x = x * c;
  return r;
}

PluckerVector wedge(const DescPtr& d, const std::vector<Vector>& vs) {
  std::size_t k = vs.size();
  if (k == 0) throw Error("dimension-mismatch", "wedge of no vectors");
  std::size_t n = vs.front().size();
  if (k > n) throw Error("dimension-mismatch", "more vectors than the ambient dimension");
  Matrix m = Matrix::from_rows(d, vs, n);
  PluckerVector z{d, n, k, {}};
  Subset rows(k);
  for (std::size_t i = 0; i < k; ++i) rows[i] = i;
  for (const auto& cols : subsets(n, k)) z.coords.push_back(algebra::det(m.submatrix(rows, cols)));
  return z;
}

Vector contract(const Subset& e, const PluckerVector& zeta) {
  if (e.size() + 1 != zeta.k) throw Error("grade-mismatch", "covector grade must be k-1");
  Vector out(zeta.n, FieldElement::zero(zeta.field));
  for (std::size_t j = 0; j < zeta.n; ++j) {
    if (std::binary_search(e.begin(), e.end(), j)) continue;
    Subset s = e;
    s.insert(std::upper_bound(s.begin(), s.end(), j), j);
    std::size_t above = static_cast<std::size_t>(std::count_if(e.begin(), e.end(), [&](std::size_t i) { return i > j; }));
    const FieldElement& c = zeta.coords[subset_index(s, zeta.n)];
    out[j] = above % 2 ? -c : c;
  }
  return out;
}

PluckerVector wedge_vector(const PluckerVector& zeta, const Vector& w) {
  if (w.size() != zeta.n) throw Error("dimension-mismatch", "vector length");
  PluckerVector r{zeta.field, zeta.n, zeta.k + 1, {}};
  for (const auto& l : subsets(zeta.n, zeta.k + 1)) {
    FieldElement s = FieldElement::zero(zeta.field);
    for (std::size_t pos = 0; pos < l.size(); ++pos) {
      std::size_t li = l[pos];
      if (w[li].is_zero()) continue;
      Subset rest = l;
      rest.erase(rest.begin() + static_cast<long>(pos));
      const FieldElement& c = zeta.coords[subset_index(rest, zeta.n)];
      if (c.is_zero()) continue;
      // members of rest greater than li are those after position pos
      std::size_t above = l.size() - 1 - pos;
      FieldElement t = c * w[li];
      s += above % 2 ? -t : t;
    }
    r.coords.push_back(s);
  }
  return r;
}

bool is_decomposable(const PluckerVector& zeta) {
  if (zeta.is_zero()) throw Error("zero-input", "zero Plucker vector");
  if (zeta.k == zeta.n) return true;
  for (const auto& e : subsets(zeta.n, zeta.k - 1))
    if (!wedge_vector(zeta, contract(e, zeta)).is_zero()) return false;
  return true;
}

std::vector<Vector> recover_subspace(const PluckerVector& zeta) {
  if (zeta.is_zero()) throw Error("zero-input", "zero Plucker vector");
  std::vector<Vector> rows;
  for (const auto& e : subsets(zeta.n, zeta.k - 1)) rows.push_back(contract(e, zeta));
  std::vector<std::size_t> piv;
  Matrix r = algebra::rref(Matrix::from_rows(zeta.field, rows, zeta.n), &piv);
  std::vector<Vector> out;
  for (std::size_t i = 0; i < piv.size(); ++i) out.push_back(r.row(i));
  return out;
}

std::vector<std::vector<QuadraticTerm>> grassmannian_equations(std::size_t n, std::size_t k) {
  std::vector<std::vector<QuadraticTerm>> eqs;
  if (k == 0 || k >= n) return eqs;
  for (const auto& e : subsets(n, k - 1))
    for (const auto& l : subsets(n, k + 1)) {
      std::vector<QuadraticTerm> eq;
      for (std::size_t pos = 0; pos < l.size(); ++pos) {
        std::size_t j = l[pos];
        if (std::binary_search(e.begin(), e.end(), j)) continue;
        Subset rest = l;
        rest.erase(rest.begin() + static_cast<long>(pos));
        Subset s = e;
        s.insert(std::upper_bound(s.begin(), s.end(), j), j);
        std::size_t above_c = static_cast<std::size_t>(std::count_if(e.begin(), e.end(), [&](std::size_t i) { return i > j; }));
        std::size_t above_w = l.size() - 1 - pos;
        int sign = (above_c + above_w) % 2 ? -1 : 1;
        eq.push_back({sign, subset_index(rest, n), subset_index(s, n)});
      }
      if (!eq.empty()) eqs.push_back(std::move(eq));
    }
  return eqs;
}

}  // namespace eqf::exterior
