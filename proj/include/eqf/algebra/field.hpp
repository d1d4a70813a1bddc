#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eqf/algebra/poly.hpp"

namespace eqf::algebra {

// Rational function field over Q or F_p in named transcendentals, with an
// optional derivation given by the images of the transcendentals.
struct FieldDescriptor {
  std::uint32_t characteristic = 0;
  std::vector<std::string> transcendentals;
  bool has_derivation = false;
  // delta(t_i) = derivation[i].first / derivation[i].second
  std::vector<std::pair<Poly, Poly>> derivation;

  int nvars() const { return static_cast<int>(transcendentals.size()); }
  bool derivation_is_polynomial() const;
  bool same_field(const FieldDescriptor& o) const;
};

using DescPtr = std::shared_ptr<const FieldDescriptor>;

// derivation defaults to d/dt1 when with_derivation is set
DescPtr make_field(std::uint32_t p, std::vector<std::string> names, bool with_derivation = true);

class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(DescPtr d, Poly num, Poly den);

  static FieldElement zero(const DescPtr& d);
  static FieldElement one(const DescPtr& d);
  static FieldElement from_int(const DescPtr& d, long v);
  static FieldElement from_scalar(const DescPtr& d, const Scalar& c);
  static FieldElement from_poly(const DescPtr& d, Poly num);
  static FieldElement transcendental(const DescPtr& d, int i);

  const DescPtr& descriptor() const { return d_; }
  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  std::uint32_t characteristic() const { return d_->characteristic; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_constant_scalar() const { return num_.is_constant() && den_.is_one(); }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
  FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
  FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }
  std::optional<FieldElement> checked_div(const FieldElement& o) const;
  FieldElement inverse() const;
  FieldElement pow(long e) const;
  // a^p in characteristic p
  FieldElement frobenius() const;

  bool operator==(const FieldElement& o) const;
  bool operator!=(const FieldElement& o) const { return !(*this == o); }

  std::string to_string() const;
  std::size_t hash() const;

 private:
  DescPtr d_;
  Poly num_, den_;
};

FieldElement derive(const FieldElement& a);
FieldElement derive_n(const FieldElement& a, int n);

// infix syntax over the descriptor's transcendental names
FieldElement parse_element(const DescPtr& d, const std::string& text);

void check_same_field(const FieldElement& a, const FieldElement& b);

}  // namespace eqf::algebra
