#include "eqf/algebra/matrix.hpp"

#include "eqf/error.hpp"

namespace eqf::algebra {

Matrix::Matrix(DescPtr d, std::size_t rows, std::size_t cols)
    : d_(std::move(d)), r_(rows), c_(cols), a_(rows * cols, FieldElement::zero(d_)) {}

Matrix Matrix::identity(const DescPtr& d, std::size_t n) {
  Matrix m(d, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = FieldElement::one(d);
  return m;
}

Matrix Matrix::from_rows(const DescPtr& d, const std::vector<Vector>& rows, std::size_t cols) {
  Matrix m(d, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw Error("dimension-mismatch", "ragged rows");
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

Matrix Matrix::from_columns(const DescPtr& d, const std::vector<Vector>& cols, std::size_t rows) {
  Matrix m(d, rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw Error("dimension-mismatch", "ragged columns");
    for (std::size_t i = 0; i < rows; ++i) m.at(i, j) = cols[j][i];
  }
  return m;
}

Vector Matrix::row(std::size_t i) const { return Vector(a_.begin() + i * c_, a_.begin() + (i + 1) * c_); }

Vector Matrix::column(std::size_t j) const {
  Vector v;
  for (std::size_t i = 0; i < r_; ++i) v.push_back(at(i, j));
  return v;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (c_ != o.r_) throw Error("dimension-mismatch", "matrix product");
  Matrix m(d_, r_, o.c_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t k = 0; k < c_; ++k) {
      if (at(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < o.c_; ++j)
        if (!o.at(k, j).is_zero()) m.at(i, j) += at(i, k) * o.at(k, j);
    }
  return m;
}

Vector Matrix::operator*(const Vector& v) const {
  if (c_ != v.size()) throw Error("dimension-mismatch", "matrix-vector product");
  Vector out(r_, FieldElement::zero(d_));
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t k = 0; k < c_; ++k)
      if (!at(i, k).is_zero() && !v[k].is_zero()) out[i] += at(i, k) * v[k];
  return out;
}

Matrix Matrix::scaled(const FieldElement& c) const {
  Matrix m = *this;
  for (auto& x : m.a_) x = x * c;
  return m;
}

Matrix Matrix::transpose() const {
  Matrix m(d_, c_, r_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j) m.at(j, i) = at(i, j);
  return m;
}

Matrix Matrix::submatrix(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const {
  Matrix m(d_, rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) m.at(i, j) = at(rows[i], cols[j]);
  return m;
}

bool Matrix::operator==(const Matrix& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }

Matrix rref(const Matrix& m, std::vector<std::size_t>* pivots) {
  Matrix a = m;
  std::size_t r = 0;
  if (pivots) pivots->clear();
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t piv = r;
    while (piv < a.rows() && a.at(piv, c).is_zero()) ++piv;
    if (piv == a.rows()) continue;
    if (piv != r)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a.at(r, j), a.at(piv, j));
    FieldElement inv = a.at(r, c).inverse();
    for (std::size_t j = c; j < a.cols(); ++j)
      if (!a.at(r, j).is_zero()) a.at(r, j) = a.at(r, j) * inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a.at(i, c).is_zero()) continue;
      FieldElement f = a.at(i, c);
      for (std::size_t j = c; j < a.cols(); ++j)
        if (!a.at(r, j).is_zero()) a.at(i, j) -= f * a.at(r, j);
    }
    if (pivots) pivots->push_back(c);
    ++r;
  }
  return a;
}

std::size_t rank(const Matrix& m) {
  std::vector<std::size_t> piv;
  rref(m, &piv);
  return piv.size();
}

FieldElement det(const Matrix& m) {
  if (m.rows() != m.cols()) throw Error("non-square", "determinant of a non-square matrix");
  const auto& d = m.descriptor();
  std::size_t n = m.rows();
  Matrix a = m;
  FieldElement result = FieldElement::one(d);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a.at(piv, c).is_zero()) ++piv;
    if (piv == n) return FieldElement::zero(d);
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a.at(c, j), a.at(piv, j));
      result = -result;
    }
    result *= a.at(c, c);
    FieldElement inv = a.at(c, c).inverse();
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a.at(i, c).is_zero()) continue;
      FieldElement f = a.at(i, c) * inv;
      for (std::size_t j = c; j < n; ++j)
        if (!a.at(c, j).is_zero()) a.at(i, j) -= f * a.at(c, j);
    }
  }
  return result;
}

Matrix adjugate(const Matrix& m) {
  if (m.rows() != m.cols()) throw Error("non-square", "adjugate of a non-square matrix");
  const auto& d = m.descriptor();
  std::size_t n = m.rows();
  Matrix adj(d, n, n);
  if (n == 0) return adj;
  if (n == 1) {
    adj.at(0, 0) = FieldElement::one(d);
    return adj;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<std::size_t> rs, cs;
      for (std::size_t k = 0; k < n; ++k) {
        if (k != i) rs.push_back(k);
        if (k != j) cs.push_back(k);
      }
      FieldElement c = det(m.submatrix(rs, cs));
      adj.at(j, i) = (i + j) % 2 ? -c : c;
    }
  return adj;
}

std::vector<Vector> kernel_basis(const Matrix& m) {
  std::vector<std::size_t> piv;
  Matrix r = rref(m, &piv);
  const auto& d = m.descriptor();
  std::vector<Vector> out;
  std::size_t pi = 0;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (pi < piv.size() && piv[pi] == c) {
      ++pi;
      continue;
    }
    Vector v(m.cols(), FieldElement::zero(d));
    v[c] = FieldElement::one(d);
    for (std::size_t k = 0; k < piv.size(); ++k) v[piv[k]] = -r.at(k, c);
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<Vector> solve(const Matrix& m, const Vector& b) {
  if (b.size() != m.rows()) throw Error("dimension-mismatch", "right-hand side");
  const auto& d = m.descriptor();
  Matrix aug(d, m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols()) = b[i];
  }
  std::vector<std::size_t> piv;
  Matrix r = rref(aug, &piv);
  if (!piv.empty() && piv.back() == m.cols()) return std::nullopt;
  Vector x(m.cols(), FieldElement::zero(d));
  for (std::size_t k = 0; k < piv.size(); ++k) x[piv[k]] = r.at(k, m.cols());
  return x;
}

FieldElement wronskian(const Vector& a) {
  if (a.empty()) throw Error("empty-input", "wronskian of no elements");
  const auto& d = a.front().descriptor();
  std::size_t k = a.size();
  Matrix w(d, k, k);
  for (std::size_t j = 0; j < k; ++j) {
    FieldElement x = a[j];
    for (std::size_t i = 0; i < k; ++i) {
      w.at(i, j) = x;
      if (i + 1 < k) x = derive(x);
    }
  }
  return det(w);
}

bool constants_linear_dependent(const Vector& a) { return wronskian(a).is_zero(); }

std::vector<Exps> standard_p_basis(const DescPtr& d) {
  std::uint32_t p = d->characteristic;
  if (p == 0) throw Error("wrong-descriptor", "p-basis needs positive characteristic");
  int e = d->nvars();
  std::size_t total = 1;
  for (int i = 0; i < e; ++i) total *= p;
  std::vector<Exps> out;
  for (std::size_t idx = 0; idx < total; ++idx) {
    Exps nu{};
    std::size_t r = idx;
    for (int i = 0; i < e; ++i) {
      nu[i] = static_cast<std::uint32_t>(r % p);
      r /= p;
    }
    out.push_back(nu);
  }
  return out;
}

FieldElement monomial_element(const DescPtr& d, const Exps& e) {
  return FieldElement::from_poly(d, Poly::monomial(e, Scalar::one(d->characteristic), d->nvars()));
}

std::optional<Vector> p_basis_coordinates(const FieldElement& a, const std::vector<Exps>& basis) {
  const auto& d = a.descriptor();
  std::uint32_t p = d->characteristic;
  if (p == 0 || basis != standard_p_basis(d))
    throw Error("wrong-descriptor", "coordinates need F_p(t) with its standard p-basis");
  int e = d->nvars();
  // a = f g^(p-1) / g^p, then split f g^(p-1) by exponent residues
  Poly h = a.num() * a.den().pow(p - 1);
  std::vector<std::vector<PTerm>> parts(basis.size());
  for (const auto& t : h.terms()) {
    std::size_t idx = 0, mul = 1;
    PTerm u;
    u.c = t.c;
    for (int i = 0; i < e; ++i) {
      idx += (t.e[i] % p) * mul;
      mul *= p;
      u.e[i] = t.e[i] / p;
    }
    parts[idx].push_back(u);
  }
  Vector out;
  for (auto& part : parts) out.emplace_back(d, Poly::from_terms(std::move(part), p, e), a.den());
  return out;
}

}  // namespace eqf::algebra
