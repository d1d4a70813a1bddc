#include "eqf/algebra/scalar.hpp"

#include <functional>
#include <stdexcept>

namespace eqf::algebra {

namespace {

std::int64_t mod_p(long long v, std::uint32_t p) {
  long long r = v % static_cast<long long>(p);
  return r < 0 ? r + p : r;
}

std::int64_t mpz_mod_p(const mpz_class& v, std::uint32_t p) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), p);
  return static_cast<std::int64_t>(r.get_ui());
}

std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
  std::int64_t t = 0, nt = 1, r = p, nr = a;
  while (nr != 0) {
    std::int64_t q = r / nr;
    t -= q * nt;
    std::swap(t, nt);
    r -= q * nr;
    std::swap(r, nr);
  }
  return t < 0 ? t + p : t;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Scalar Scalar::zero(std::uint32_t p) { return from_int(0, p); }
Scalar Scalar::one(std::uint32_t p) { return from_int(1, p); }

Scalar Scalar::from_int(long v, std::uint32_t p) {
  Scalar s;
  s.p_ = p;
  if (p == 0)
    s.v_ = mpq_class(v);
  else
    s.v_ = mod_p(v, p);
  return s;
}

Scalar Scalar::from_mpz(const mpz_class& v, std::uint32_t p) {
  Scalar s;
  s.p_ = p;
  if (p == 0)
    s.v_ = mpq_class(v);
  else
    s.v_ = mpz_mod_p(v, p);
  return s;
}

Scalar Scalar::from_mpq(const mpq_class& v, std::uint32_t p) {
  if (p == 0) {
    Scalar s;
    s.v_ = v;
    return s;
  }
  Scalar num = from_mpz(v.get_num(), p);
  Scalar den = from_mpz(v.get_den(), p);
  if (den.is_zero()) throw std::domain_error("denominator divisible by the characteristic");
  return num * den.inverse();
}

bool Scalar::is_zero() const {
  if (p_ == 0) return sgn(rational()) == 0;
  return residue() == 0;
}

bool Scalar::is_one() const {
  if (p_ == 0) return rational() == 1;
  return residue() == 1;
}

bool Scalar::is_negative_rational() const { return p_ == 0 && sgn(rational()) < 0; }

Scalar Scalar::operator+(const Scalar& o) const {
  Scalar s;
  s.p_ = p_;
  if (p_ == 0)
    s.v_ = mpq_class(rational() + o.rational());
  else
    s.v_ = static_cast<std::int64_t>((residue() + o.residue()) % p_);
  return s;
}

Scalar Scalar::operator-(const Scalar& o) const {
  Scalar s;
  s.p_ = p_;
  if (p_ == 0)
    s.v_ = mpq_class(rational() - o.rational());
  else
    s.v_ = static_cast<std::int64_t>((residue() + p_ - o.residue()) % p_);
  return s;
}

Scalar Scalar::operator*(const Scalar& o) const {
  Scalar s;
  s.p_ = p_;
  if (p_ == 0)
    s.v_ = mpq_class(rational() * o.rational());
  else
    s.v_ = static_cast<std::int64_t>((residue() * o.residue()) % p_);
  return s;
}

Scalar Scalar::operator-() const {
  Scalar s;
  s.p_ = p_;
  if (p_ == 0)
    s.v_ = mpq_class(-rational());
  else
    s.v_ = static_cast<std::int64_t>((p_ - residue()) % p_);
  return s;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  Scalar s;
  s.p_ = p_;
  if (p_ == 0)
    s.v_ = mpq_class(1 / rational());
  else
    s.v_ = inv_mod(residue(), p_);
  return s;
}

Scalar Scalar::pow(std::uint64_t e) const {
  Scalar r = one(p_), b = *this;
  while (e) {
    if (e & 1) r *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return r;
}

bool Scalar::operator==(const Scalar& o) const {
  if (p_ != o.p_) return false;
  if (p_ == 0) return rational() == o.rational();
  return residue() == o.residue();
}

std::string Scalar::to_string() const {
  if (p_ == 0) return rational().get_str();
  return std::to_string(residue());
}

std::size_t Scalar::hash() const {
  if (p_ == 0) return std::hash<std::string>{}(rational().get_str());
  return std::hash<std::int64_t>{}(residue());
}

}  // namespace eqf::algebra
