#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <variant>

namespace eqf::algebra {

// Element of the prime field of characteristic p: Q when p == 0, F_p otherwise.
class Scalar {
 public:
  Scalar() = default;

  static Scalar zero(std::uint32_t p);
  static Scalar one(std::uint32_t p);
  static Scalar from_int(long v, std::uint32_t p);
  static Scalar from_mpz(const mpz_class& v, std::uint32_t p);
  static Scalar from_mpq(const mpq_class& v, std::uint32_t p);

  std::uint32_t characteristic() const { return p_; }
  bool is_zero() const;
  bool is_one() const;
  bool is_negative_rational() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator-() const;
  Scalar inverse() const;
  Scalar pow(std::uint64_t e) const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  // residue in [0,p) for p > 0
  std::int64_t residue() const { return std::get<std::int64_t>(v_); }
  const mpq_class& rational() const { return std::get<mpq_class>(v_); }

  std::string to_string() const;
  std::size_t hash() const;

 private:
  std::uint32_t p_ = 0;
  std::variant<std::int64_t, mpq_class> v_{std::int64_t{0}};
};

bool is_prime(std::uint64_t n);

}  // namespace eqf::algebra
