#include "eqf/algebra/field.hpp"

#include <cctype>

#include "eqf/error.hpp"

namespace eqf::algebra {

bool FieldDescriptor::derivation_is_polynomial() const {
  for (const auto& [n, d] : derivation)
    if (!d.is_one()) return false;
  return true;
}

bool FieldDescriptor::same_field(const FieldDescriptor& o) const {
  return characteristic == o.characteristic && transcendentals == o.transcendentals;
}

DescPtr make_field(std::uint32_t p, std::vector<std::string> names, bool with_derivation) {
  if (p != 0 && !is_prime(p)) throw Error("bad-characteristic", std::to_string(p) + " is not prime");
  if (names.size() > static_cast<std::size_t>(kMaxVars))
    throw Error("too-many-transcendentals", "at most " + std::to_string(kMaxVars));
  auto d = std::make_shared<FieldDescriptor>();
  d->characteristic = p;
  d->transcendentals = std::move(names);
  d->has_derivation = with_derivation;
  int n = d->nvars();
  if (with_derivation)
    for (int i = 0; i < n; ++i)
      d->derivation.emplace_back(Poly::from_int(i == 0 ? 1 : 0, p, n), Poly::from_int(1, p, n));
  return d;
}

void check_same_field(const FieldElement& a, const FieldElement& b) {
  if (a.descriptor() == b.descriptor()) return;
  if (!a.descriptor() || !b.descriptor() || !a.descriptor()->same_field(*b.descriptor()))
    throw Error("wrong-descriptor", "elements of different fields");
}

FieldElement::FieldElement(DescPtr d, Poly num, Poly den) : d_(std::move(d)) {
  if (den.is_zero()) throw Error("division-by-zero", "zero denominator");
  if (num.is_zero()) {
    num_ = Poly(d_->characteristic, d_->nvars());
    den_ = Poly::from_int(1, d_->characteristic, d_->nvars());
    return;
  }
  if (!den.is_constant()) {
    Poly g = gcd(num, den);
    if (!g.is_one()) {
      num = num.exact_div(g);
      den = den.exact_div(g);
    }
  }
  Scalar lc = den.leading().c;
  if (!lc.is_one()) {
    Scalar inv = lc.inverse();
    num = num.scale(inv);
    den = den.scale(inv);
  }
  num_ = std::move(num);
  den_ = std::move(den);
}

FieldElement FieldElement::zero(const DescPtr& d) { return from_int(d, 0); }
FieldElement FieldElement::one(const DescPtr& d) { return from_int(d, 1); }

FieldElement FieldElement::from_int(const DescPtr& d, long v) {
  return from_scalar(d, Scalar::from_int(v, d->characteristic));
}

FieldElement FieldElement::from_scalar(const DescPtr& d, const Scalar& c) {
  FieldElement r;
  r.d_ = d;
  r.num_ = Poly::constant(c, d->nvars());
  r.den_ = Poly::from_int(1, d->characteristic, d->nvars());
  return r;
}

FieldElement FieldElement::from_poly(const DescPtr& d, Poly num) {
  FieldElement r;
  r.d_ = d;
  r.num_ = std::move(num);
  r.den_ = Poly::from_int(1, d->characteristic, d->nvars());
  return r;
}

FieldElement FieldElement::transcendental(const DescPtr& d, int i) {
  return from_poly(d, Poly::variable(i, d->characteristic, d->nvars()));
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  check_same_field(*this, o);
  if (o.is_zero()) return *this;
  if (is_zero()) return o;
  if (den_.is_one() && o.den_.is_one()) return from_poly(d_, num_ + o.num_);
  if (o.den_.is_one()) return FieldElement(d_, num_ + o.num_ * den_, den_);
  if (den_.is_one()) return FieldElement(d_, num_ * o.den_ + o.num_, o.den_);
  if (den_ == o.den_) return FieldElement(d_, num_ + o.num_, den_);
  Poly g = gcd(den_, o.den_);
  if (g.is_one()) return FieldElement(d_, num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  Poly a = den_.exact_div(g), b = o.den_.exact_div(g);
  return FieldElement(d_, num_ * b + o.num_ * a, a * o.den_);
}

FieldElement FieldElement::operator-() const {
  FieldElement r = *this;
  r.num_ = -r.num_;
  return r;
}

FieldElement FieldElement::operator-(const FieldElement& o) const { return *this + (-o); }

FieldElement FieldElement::operator*(const FieldElement& o) const {
  check_same_field(*this, o);
  if (is_zero() || o.is_zero()) return zero(d_);
  if (den_.is_one() && o.den_.is_one()) return from_poly(d_, num_ * o.num_);
  // cross-cancel so the product is reduced without a gcd on the full product
  Poly g1 = gcd(num_, o.den_), g2 = gcd(o.num_, den_);
  Poly a = g1.is_one() ? num_ : num_.exact_div(g1);
  Poly od = g1.is_one() ? o.den_ : o.den_.exact_div(g1);
  Poly c = g2.is_one() ? o.num_ : o.num_.exact_div(g2);
  Poly dd = g2.is_one() ? den_ : den_.exact_div(g2);
  Poly n = a * c, d = dd * od;
  Scalar lc = d.leading().c;
  if (!lc.is_one()) {
    Scalar inv = lc.inverse();
    n = n.scale(inv);
    d = d.scale(inv);
  }
  FieldElement r;
  r.d_ = d_;
  r.num_ = std::move(n);
  r.den_ = std::move(d);
  return r;
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw Error("division-by-zero", "inverse of zero");
  Scalar lc = num_.leading().c.inverse();
  FieldElement r;
  r.d_ = d_;
  r.num_ = den_.scale(lc);
  r.den_ = num_.scale(lc);
  return r;
}

FieldElement FieldElement::operator/(const FieldElement& o) const { return *this * o.inverse(); }

std::optional<FieldElement> FieldElement::checked_div(const FieldElement& o) const {
  if (o.is_zero()) return std::nullopt;
  return *this / o;
}

FieldElement FieldElement::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  FieldElement r;
  r.d_ = d_;
  r.num_ = num_.pow(static_cast<std::uint64_t>(e));
  r.den_ = den_.pow(static_cast<std::uint64_t>(e));
  return r;
}

FieldElement FieldElement::frobenius() const {
  if (characteristic() == 0) throw Error("wrong-descriptor", "frobenius needs positive characteristic");
  FieldElement r;
  r.d_ = d_;
  r.num_ = num_.frobenius();
  r.den_ = den_.frobenius();
  return r;
}

bool FieldElement::operator==(const FieldElement& o) const {
  check_same_field(*this, o);
  return num_ == o.num_ && den_ == o.den_;
}

std::string FieldElement::to_string() const {
  const auto& names = d_->transcendentals;
  if (den_.is_one()) return num_.to_string(names);
  return "(" + num_.to_string(names) + ")/(" + den_.to_string(names) + ")";
}

std::size_t FieldElement::hash() const { return num_.hash() * 31 + den_.hash(); }

FieldElement derive(const FieldElement& a) {
  const auto& d = a.descriptor();
  if (!d->has_derivation) throw Error("no-derivation-configured", "field has no derivation");
  int n = d->nvars();
  std::uint32_t p = d->characteristic;
  if (d->derivation_is_polynomial()) {
    auto dpoly = [&](const Poly& f) {
      Poly s(p, n);
      for (int i = 0; i < n; ++i) {
        const Poly& img = d->derivation[i].first;
        if (img.is_zero()) continue;
        Poly df = f.partial(i);
        if (!df.is_zero()) s += img.is_one() ? df : df * img;
      }
      return s;
    };
    Poly dn = dpoly(a.num());
    if (a.den().is_one()) return FieldElement::from_poly(d, dn);
    Poly dd = dpoly(a.den());
    return FieldElement(d, dn * a.den() - a.num() * dd, a.den() * a.den());
  }
  // delta(f) = P_f / L with L the lcm of the image denominators
  Poly l = Poly::from_int(1, p, n);
  for (const auto& [num, den] : d->derivation) l = (l * den).exact_div(gcd(l, den));
  auto dpoly = [&](const Poly& f) {
    Poly s(p, n);
    for (int i = 0; i < n; ++i) {
      const auto& [num, den] = d->derivation[i];
      if (num.is_zero()) continue;
      Poly df = f.partial(i);
      if (!df.is_zero()) s += df * num * l.exact_div(den);
    }
    return s;
  };
  return FieldElement(d, dpoly(a.num()) * a.den() - a.num() * dpoly(a.den()), l * a.den() * a.den());
}

FieldElement derive_n(const FieldElement& a, int n) {
  FieldElement r = a;
  for (int i = 0; i < n; ++i) r = derive(r);
  return r;
}

namespace {

class ElementParser {
 public:
  ElementParser(const DescPtr& d, const std::string& s) : d_(d), s_(s) {}

  FieldElement run() {
    FieldElement v = expr();
    skip();
    if (i_ != s_.size()) fail("unexpected character");
    return v;
  }

 private:
  const DescPtr& d_;
  const std::string& s_;
  std::size_t i_ = 0;

  [[noreturn]] void fail(const std::string& what) {
    throw Error("syntax-error", what + " at offset " + std::to_string(i_) + " in '" + s_ + "'");
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }

  FieldElement expr() {
    FieldElement v = term();
    while (true) {
      if (eat('+'))
        v += term();
      else if (eat('-'))
        v -= term();
      else
        return v;
    }
  }
  FieldElement term() {
    FieldElement v = unary();
    while (true) {
      if (eat('*')) {
        v *= unary();
      } else if (eat('/')) {
        FieldElement w = unary();
        if (w.is_zero()) fail("division by zero");
        v = v / w;
      } else {
        return v;
      }
    }
  }
  FieldElement unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }
  FieldElement power() {
    FieldElement b = atom();
    if (eat('^')) {
      bool neg = eat('-');
      skip();
      std::size_t st = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      if (st == i_) fail("expected exponent");
      long e = std::stol(s_.substr(st, i_ - st));
      if (neg && b.is_zero()) fail("division by zero");
      return b.pow(neg ? -e : e);
    }
    return b;
  }
  FieldElement atom() {
    skip();
    if (eat('(')) {
      FieldElement v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (i_ >= s_.size()) fail("unexpected end");
    std::size_t st = i_;
    if (std::isdigit(static_cast<unsigned char>(s_[i_]))) {
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      mpz_class v(s_.substr(st, i_ - st));
      return FieldElement::from_scalar(d_, Scalar::from_mpz(v, d_->characteristic));
    }
    if (std::isalpha(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_') {
      while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
      std::string name = s_.substr(st, i_ - st);
      for (int k = 0; k < d_->nvars(); ++k)
        if (d_->transcendentals[k] == name) return FieldElement::transcendental(d_, k);
      i_ = st;
      fail("unknown transcendental '" + name + "'");
    }
    fail("unexpected character");
  }
};

}  // namespace

FieldElement parse_element(const DescPtr& d, const std::string& text) { return ElementParser(d, text).run(); }

}  // namespace eqf::algebra
