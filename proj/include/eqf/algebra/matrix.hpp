#pragma once

#include <optional>
#include <vector>

#include "eqf/algebra/field.hpp"

namespace eqf::algebra {

using Vector = std::vector<FieldElement>;

class Matrix {
 public:
  Matrix() = default;
  Matrix(DescPtr d, std::size_t rows, std::size_t cols);
  static Matrix identity(const DescPtr& d, std::size_t n);
  static Matrix from_rows(const DescPtr& d, const std::vector<Vector>& rows, std::size_t cols);
  static Matrix from_columns(const DescPtr& d, const std::vector<Vector>& cols, std::size_t rows);

  const DescPtr& descriptor() const { return d_; }
  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  FieldElement& at(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const FieldElement& at(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }
  Vector row(std::size_t i) const;
  Vector column(std::size_t j) const;

  Matrix operator*(const Matrix& o) const;
  Vector operator*(const Vector& v) const;
  Matrix scaled(const FieldElement& c) const;
  Matrix transpose() const;
  // rows in `rows`, columns in `cols`
  Matrix submatrix(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const;
  bool operator==(const Matrix& o) const;

 private:
  DescPtr d_;
  std::size_t r_ = 0, c_ = 0;
  std::vector<FieldElement> a_;
};

// reduced row echelon form; pivot columns reported in increasing order
Matrix rref(const Matrix& m, std::vector<std::size_t>* pivots = nullptr);
std::size_t rank(const Matrix& m);
FieldElement det(const Matrix& m);
Matrix adjugate(const Matrix& m);
// one vector per free column c, with entry 1 at c; ordered by c
std::vector<Vector> kernel_basis(const Matrix& m);
// some solution of m x = b, if consistent
std::optional<Vector> solve(const Matrix& m, const Vector& b);

FieldElement wronskian(const Vector& a);
bool constants_linear_dependent(const Vector& a);

// standard p-basis t^nu, 0 <= nu_i < p, indexed by sum nu_i p^(i-1)
std::vector<Exps> standard_p_basis(const DescPtr& d);
// zeta with a = sum zeta_nu^p t^nu
std::optional<Vector> p_basis_coordinates(const FieldElement& a, const std::vector<Exps>& basis);
FieldElement monomial_element(const DescPtr& d, const Exps& e);

}  // namespace eqf::algebra
