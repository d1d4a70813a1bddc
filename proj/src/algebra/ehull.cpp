#include "eqf/algebra/ehull.hpp"

namespace eqf::algebra {

namespace {

std::vector<Vector> rref_rows(const DescPtr& d, const std::vector<Vector>& rows, std::size_t dim) {
  if (rows.empty()) return {};
  std::vector<std::size_t> piv;
  Matrix r = rref(Matrix::from_rows(d, rows, dim), &piv);
  std::vector<Vector> out;
  for (std::size_t i = 0; i < piv.size(); ++i) out.push_back(r.row(i));
  return out;
}

}  // namespace

std::vector<Vector> delta_closure(const DescPtr& d, const std::vector<Vector>& rows, std::size_t dim, int* steps) {
  std::vector<Vector> basis = rref_rows(d, rows, dim);
  int k = 0;
  for (;;) {
    ++k;
    std::vector<Vector> all = basis;
    for (const auto& b : basis) {
      Vector db;
      bool nz = false;
      for (const auto& x : b) {
        db.push_back(derive(x));
        nz = nz || !db.back().is_zero();
      }
      if (nz) all.push_back(db);
    }
    std::vector<Vector> next = rref_rows(d, all, dim);
    if (next.size() == basis.size()) break;
    basis = std::move(next);
  }
  if (steps) *steps = k;
  return basis;
}

std::vector<Vector> constant_kernel(const Matrix& m) {
  std::vector<Vector> rows;
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
  auto closed = delta_closure(m.descriptor(), rows, m.cols());
  if (closed.empty()) return kernel_basis(Matrix(m.descriptor(), 0, m.cols()));
  return kernel_basis(Matrix::from_rows(m.descriptor(), closed, m.cols()));
}

std::optional<FieldElement> pth_root(const FieldElement& a) {
  const auto& d = a.descriptor();
  if (d->characteristic == 0) return std::nullopt;
  auto c = p_basis_coordinates(a, standard_p_basis(d));
  if (!c) return std::nullopt;
  for (std::size_t i = 1; i < c->size(); ++i)
    if (!(*c)[i].is_zero()) return std::nullopt;
  return (*c)[0];
}

}  // namespace eqf::algebra
