#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "eqf/algebra/scalar.hpp"

namespace eqf::algebra {

constexpr int kMaxVars = 4;
using Exps = std::array<std::uint32_t, kMaxVars>;

std::uint32_t total_degree(const Exps& e);
// graded lexicographic: true if a comes strictly before b (a is larger)
bool grlex_greater(const Exps& a, const Exps& b);

struct PTerm {
  Exps e{};
  Scalar c;
};

// Sparse polynomial in a fixed number of variables over the prime field of
// characteristic p. Terms are kept strictly decreasing in grlex order with
// nonzero coefficients, so equality is structural.
class Poly {
 public:
  Poly() = default;
  Poly(std::uint32_t p, int nvars) : p_(p), nvars_(nvars) {}

  static Poly constant(const Scalar& c, int nvars);
  static Poly from_int(long v, std::uint32_t p, int nvars);
  static Poly variable(int i, std::uint32_t p, int nvars);
  static Poly monomial(const Exps& e, const Scalar& c, int nvars);
  static Poly from_terms(std::vector<PTerm> terms, std::uint32_t p, int nvars);

  std::uint32_t characteristic() const { return p_; }
  int nvars() const { return nvars_; }
  const std::vector<PTerm>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_one() const;
  Scalar constant_value() const;
  const PTerm& leading() const { return terms_.front(); }
  std::uint32_t total_degree() const;
  std::uint32_t degree_in(int v) const;
  // variables that occur with positive exponent
  std::vector<int> support() const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator-() const;
  Poly scale(const Scalar& c) const;
  Poly shift(const Exps& e) const;
  Poly pow(std::uint64_t e) const;
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  Poly partial(int v) const;
  Poly monic() const;
  // exact quotient; throws eqf::Error("inexact-division") otherwise
  Poly exact_div(const Poly& d) const;
  // division with remainder in a single variable v (other variables must not occur)
  void univariate_divmod(const Poly& d, int v, Poly& q, Poly& r) const;

  // f^p in characteristic p (coefficients are fixed by Frobenius)
  Poly frobenius() const;

  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

  std::string to_string(const std::vector<std::string>& names) const;
  std::size_t hash() const;

 private:
  std::uint32_t p_ = 0;
  int nvars_ = 0;
  std::vector<PTerm> terms_;
};

// monic gcd (zero only if both inputs are zero)
Poly gcd(const Poly& a, const Poly& b);

}  // namespace eqf::algebra
