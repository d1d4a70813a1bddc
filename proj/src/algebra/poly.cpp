#include "eqf/algebra/poly.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "eqf/error.hpp"

namespace eqf::algebra {

std::uint32_t total_degree(const Exps& e) {
  std::uint32_t s = 0;
  for (auto x : e) s += x;
  return s;
}

bool grlex_greater(const Exps& a, const Exps& b) {
  auto da = total_degree(a), db = total_degree(b);
  if (da != db) return da > db;
  return a > b;
}

namespace {

// -1: not univariate, else the single variable (or kMaxVars if constant)
int single_var(const Poly& f) {
  int v = kMaxVars;
  for (const auto& t : f.terms())
    for (int i = 0; i < f.nvars(); ++i)
      if (t.e[i] != 0) {
        if (v == kMaxVars)
          v = i;
        else if (v != i)
          return -1;
      }
  return v;
}

using Dense = std::vector<Scalar>;

Dense to_dense(const Poly& f, int v) {
  std::uint32_t deg = 0;
  for (const auto& t : f.terms()) deg = std::max(deg, v < kMaxVars ? t.e[v] : 0u);
  Dense d(f.is_zero() ? 0 : deg + 1, Scalar::zero(f.characteristic()));
  for (const auto& t : f.terms()) d[v < kMaxVars ? t.e[v] : 0] = t.c;
  return d;
}

void trim(Dense& d) {
  while (!d.empty() && d.back().is_zero()) d.pop_back();
}

Poly from_dense(const Dense& d, int v, std::uint32_t p, int nvars) {
  std::vector<PTerm> terms;
  for (std::size_t i = d.size(); i-- > 0;) {
    if (d[i].is_zero()) continue;
    PTerm t;
    if (v < kMaxVars) t.e[v] = static_cast<std::uint32_t>(i);
    t.c = d[i];
    terms.push_back(std::move(t));
  }
  return Poly::from_terms(std::move(terms), p, nvars);
}

// a := a mod b, q := quotient; b nonzero, trimmed
void dense_divmod(Dense a, const Dense& b, Dense& q, Dense& r) {
  trim(a);
  std::uint32_t p = b.back().characteristic();
  Scalar inv = b.back().inverse();
  if (a.size() < b.size()) {
    q.clear();
    r = std::move(a);
    return;
  }
  q.assign(a.size() - b.size() + 1, Scalar::zero(p));
  for (std::size_t i = a.size() - 1;; --i) {
    if (!a[i].is_zero()) {
      Scalar c = a[i] * inv;
      std::size_t shift = i - (b.size() - 1);
      q[shift] = c;
      for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= c * b[j];
    }
    if (i == b.size() - 1) break;
  }
  trim(a);
  r = std::move(a);
}

Dense dense_mul(const Dense& a, const Dense& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Dense c(a.size() + b.size() - 1, Scalar::zero(p));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (!b[j].is_zero()) c[i + j] += a[i] * b[j];
  }
  trim(c);
  return c;
}

using ZDense = std::vector<mpz_class>;

void ztrim(ZDense& d) {
  while (!d.empty() && sgn(d.back()) == 0) d.pop_back();
}

void zprimitive(ZDense& d) {
  mpz_class g = 0;
  for (const auto& c : d) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (g > 1)
    for (auto& c : d) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

ZDense to_zdense(const Poly& f, int v) {
  Dense q = to_dense(f, v);
  mpz_class l = 1;
  for (const auto& c : q) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.rational().get_den_mpz_t());
  ZDense z;
  for (const auto& c : q) z.push_back(c.rational().get_num() * (l / c.rational().get_den()));
  ztrim(z);
  zprimitive(z);
  return z;
}

// primitive polynomial remainder sequence over Z
Poly univariate_gcd_q(const Poly& a, const Poly& b, int v) {
  ZDense x = to_zdense(a, v), y = to_zdense(b, v);
  if (x.size() < y.size()) std::swap(x, y);
  while (!y.empty()) {
    ZDense r = x;
    const mpz_class& lb = y.back();
    while (r.size() >= y.size()) {
      mpz_class lr = r.back();
      std::size_t shift = r.size() - y.size();
      for (auto& c : r) c *= lb;
      for (std::size_t j = 0; j < y.size(); ++j) r[shift + j] -= lr * y[j];
      ztrim(r);
    }
    zprimitive(r);
    x = std::move(y);
    y = std::move(r);
  }
  Dense q;
  for (const auto& c : x) q.push_back(Scalar::from_mpz(c, 0));
  return from_dense(q, v, 0, a.nvars()).monic();
}

Poly univariate_gcd(const Poly& a, const Poly& b, int v) {
  if (a.characteristic() == 0) return univariate_gcd_q(a, b, v);
  Dense x = to_dense(a, v), y = to_dense(b, v), q, r;
  trim(x);
  trim(y);
  while (!y.empty()) {
    dense_divmod(x, y, q, r);
    if (!r.empty()) {
      Scalar inv = r.back().inverse();
      for (auto& c : r) c *= inv;
    }
    x = std::move(y);
    y = std::move(r);
  }
  return from_dense(x, v, a.characteristic(), a.nvars()).monic();
}

std::map<std::uint32_t, Poly> coefficients_in(const Poly& f, int v) {
  std::map<std::uint32_t, std::vector<PTerm>> groups;
  for (const auto& t : f.terms()) {
    PTerm u = t;
    u.e[v] = 0;
    groups[t.e[v]].push_back(std::move(u));
  }
  std::map<std::uint32_t, Poly> out;
  for (auto& [k, ts] : groups) out[k] = Poly::from_terms(std::move(ts), f.characteristic(), f.nvars());
  return out;
}

Poly content_in(const Poly& f, int v) {
  Poly g(f.characteristic(), f.nvars());
  for (auto& [k, c] : coefficients_in(f, v)) {
    g = gcd(g, c);
    if (g.is_constant()) break;
  }
  return g;
}

Poly lead_coeff_in(const Poly& f, int v) { return coefficients_in(f, v).rbegin()->second; }

Poly var_power(int v, std::uint32_t k, std::uint32_t p, int nvars) {
  Exps e{};
  e[v] = k;
  return Poly::monomial(e, Scalar::one(p), nvars);
}

Poly pseudo_rem(const Poly& a, const Poly& b, int v) {
  Poly r = a;
  std::uint32_t n = b.degree_in(v);
  Poly lcb = lead_coeff_in(b, v);
  while (!r.is_zero() && r.degree_in(v) >= n) {
    std::uint32_t m = r.degree_in(v);
    Poly lcr = lead_coeff_in(r, v);
    r = lcb * r - lcr * var_power(v, m - n, a.characteristic(), a.nvars()) * b;
  }
  return r;
}

// scalar normalization that keeps pseudo-remainder coefficients small:
// primitive integer content over Q, monic over F_p
Poly scalar_normalize(const Poly& f) {
  if (f.is_zero()) return f;
  if (f.characteristic() != 0) return f.monic();
  mpz_class l = 1, g = 0;
  for (const auto& t : f.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.c.rational().get_den_mpz_t());
  for (const auto& t : f.terms()) {
    mpz_class n = t.c.rational().get_num() * (l / t.c.rational().get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
  }
  mpq_class s(l, g);
  if (f.leading().c.is_negative_rational()) s = -s;
  return f.scale(Scalar::from_mpq(s, 0));
}

Poly multivariate_gcd(const Poly& a, const Poly& b) {
  auto sa = a.support(), sb = b.support();
  std::vector<int> u;
  std::set_union(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(u));
  if (u.empty()) return Poly::from_int(1, a.characteristic(), a.nvars());
  int v = u.back();
  bool in_a = a.degree_in(v) > 0, in_b = b.degree_in(v) > 0;
  if (!in_a) return gcd(a, content_in(b, v));
  if (!in_b) return gcd(content_in(a, v), b);
  Poly ca = content_in(a, v), cb = content_in(b, v);
  Poly c = gcd(ca, cb);
  Poly x = scalar_normalize(a.exact_div(ca)), y = scalar_normalize(b.exact_div(cb));
  if (x.degree_in(v) < y.degree_in(v)) std::swap(x, y);
  Poly g;
  while (true) {
    Poly r = pseudo_rem(x, y, v);
    if (r.is_zero()) {
      g = y;
      break;
    }
    if (r.degree_in(v) == 0) {
      g = Poly::from_int(1, a.characteristic(), a.nvars());
      break;
    }
    x = y;
    y = scalar_normalize(r.exact_div(content_in(r, v)));
  }
  if (!g.is_constant()) g = g.exact_div(content_in(g, v));
  return (c * g).monic();
}

}  // namespace

Poly Poly::constant(const Scalar& c, int nvars) {
  Poly r(c.characteristic(), nvars);
  if (!c.is_zero()) r.terms_.push_back(PTerm{Exps{}, c});
  return r;
}

Poly Poly::from_int(long v, std::uint32_t p, int nvars) { return constant(Scalar::from_int(v, p), nvars); }

Poly Poly::variable(int i, std::uint32_t p, int nvars) {
  Exps e{};
  e[i] = 1;
  return monomial(e, Scalar::one(p), nvars);
}

Poly Poly::monomial(const Exps& e, const Scalar& c, int nvars) {
  Poly r(c.characteristic(), nvars);
  if (!c.is_zero()) r.terms_.push_back(PTerm{e, c});
  return r;
}

Poly Poly::from_terms(std::vector<PTerm> terms, std::uint32_t p, int nvars) {
  std::sort(terms.begin(), terms.end(), [](const PTerm& a, const PTerm& b) { return grlex_greater(a.e, b.e); });
  Poly r(p, nvars);
  for (auto& t : terms) {
    if (!r.terms_.empty() && r.terms_.back().e == t.e)
      r.terms_.back().c += t.c;
    else
      r.terms_.push_back(std::move(t));
    if (r.terms_.back().c.is_zero()) r.terms_.pop_back();
  }
  return r;
}

bool Poly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && total_degree() == 0); }

bool Poly::is_one() const { return terms_.size() == 1 && ::eqf::algebra::total_degree(terms_[0].e) == 0 && terms_[0].c.is_one(); }

Scalar Poly::constant_value() const {
  if (terms_.empty()) return Scalar::zero(p_);
  const auto& t = terms_.back();
  if (::eqf::algebra::total_degree(t.e) == 0) return t.c;
  return Scalar::zero(p_);
}

std::uint32_t Poly::total_degree() const {
  return terms_.empty() ? 0 : ::eqf::algebra::total_degree(terms_.front().e);
}

std::uint32_t Poly::degree_in(int v) const {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.e[v]);
  return d;
}

std::vector<int> Poly::support() const {
  std::vector<int> s;
  for (int i = 0; i < nvars_; ++i)
    for (const auto& t : terms_)
      if (t.e[i]) {
        s.push_back(i);
        break;
      }
  return s;
}

Poly Poly::operator+(const Poly& o) const {
  Poly r(p_, std::max(nvars_, o.nvars_));
  r.p_ = terms_.empty() ? o.p_ : p_;
  std::size_t i = 0, j = 0;
  r.terms_.reserve(terms_.size() + o.terms_.size());
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() || (i < terms_.size() && grlex_greater(terms_[i].e, o.terms_[j].e))) {
      r.terms_.push_back(terms_[i++]);
    } else if (i == terms_.size() || grlex_greater(o.terms_[j].e, terms_[i].e)) {
      r.terms_.push_back(o.terms_[j++]);
    } else {
      Scalar c = terms_[i].c + o.terms_[j].c;
      if (!c.is_zero()) r.terms_.push_back(PTerm{terms_[i].e, c});
      ++i;
      ++j;
    }
  }
  return r;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.terms_) t.c = -t.c;
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  if (terms_.empty() || o.terms_.empty()) return Poly(p_, std::max(nvars_, o.nvars_));
  int nv = std::max(nvars_, o.nvars_);
  if (terms_.size() == 1) return o.shift(terms_[0].e).scale(terms_[0].c);
  if (o.terms_.size() == 1) return shift(o.terms_[0].e).scale(o.terms_[0].c);
  int va = single_var(*this), vb = single_var(o);
  if (va >= 0 && vb >= 0 && (va == vb || va == kMaxVars || vb == kMaxVars)) {
    int v = va == kMaxVars ? vb : va;
    if (v == kMaxVars) v = 0;
    return from_dense(dense_mul(to_dense(*this, v), to_dense(o, v), p_), v, p_, nv);
  }
  // shifting by a monomial preserves the order, so merge row by row
  const Poly& small = terms_.size() <= o.terms_.size() ? *this : o;
  const Poly& big = terms_.size() <= o.terms_.size() ? o : *this;
  Poly acc(p_, nv);
  for (const auto& a : small.terms_) acc += big.shift(a.e).scale(a.c);
  return acc;
}

Poly Poly::scale(const Scalar& c) const {
  if (c.is_zero()) return Poly(p_, nvars_);
  Poly r = *this;
  for (auto& t : r.terms_) t.c *= c;
  return r;
}

Poly Poly::shift(const Exps& e) const {
  Poly r = *this;
  for (auto& t : r.terms_)
    for (int k = 0; k < kMaxVars; ++k) t.e[k] += e[k];
  return r;
}

Poly Poly::pow(std::uint64_t e) const {
  Poly r = from_int(1, p_, nvars_), b = *this;
  while (e) {
    if (e & 1) r *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return r;
}

Poly Poly::partial(int v) const {
  std::vector<PTerm> out;
  for (const auto& t : terms_) {
    if (t.e[v] == 0) continue;
    PTerm u = t;
    u.c = t.c * Scalar::from_int(static_cast<long>(t.e[v]), p_);
    u.e[v] -= 1;
    if (!u.c.is_zero()) out.push_back(std::move(u));
  }
  // lowering one exponent can reorder terms
  return from_terms(std::move(out), p_, nvars_);
}

Poly Poly::monic() const {
  if (terms_.empty()) return *this;
  return scale(terms_.front().c.inverse());
}

void Poly::univariate_divmod(const Poly& d, int v, Poly& q, Poly& r) const {
  Dense a = to_dense(*this, v), b = to_dense(d, v), dq, dr;
  trim(b);
  if (b.empty()) throw Error("division-by-zero", "polynomial division by zero");
  dense_divmod(a, b, dq, dr);
  trim(dq);
  q = from_dense(dq, v, p_, nvars_);
  r = from_dense(dr, v, p_, nvars_);
}

Poly Poly::exact_div(const Poly& d) const {
  if (d.is_zero()) throw Error("division-by-zero", "polynomial division by zero");
  if (terms_.empty()) return *this;
  if (d.terms_.size() == 1) {
    const auto& m = d.terms_[0];
    Scalar inv = m.c.inverse();
    Poly r = *this;
    for (auto& t : r.terms_) {
      for (int k = 0; k < kMaxVars; ++k) {
        if (t.e[k] < m.e[k]) throw Error("inexact-division", "monomial does not divide");
        t.e[k] -= m.e[k];
      }
      t.c *= inv;
    }
    return r;
  }
  int va = single_var(*this), vb = single_var(d);
  if (va >= 0 && vb >= 0 && (va == vb || va == kMaxVars)) {
    Poly q, r;
    univariate_divmod(d, vb, q, r);
    if (!r.is_zero()) throw Error("inexact-division", "nonzero remainder");
    return q;
  }
  Poly rem = *this;
  std::vector<PTerm> quot;
  const PTerm& lt = d.terms_.front();
  Scalar inv = lt.c.inverse();
  while (!rem.is_zero()) {
    const PTerm& lr = rem.terms_.front();
    PTerm t;
    for (int k = 0; k < kMaxVars; ++k) {
      if (lr.e[k] < lt.e[k]) throw Error("inexact-division", "leading monomial does not divide");
      t.e[k] = lr.e[k] - lt.e[k];
    }
    t.c = lr.c * inv;
    rem = rem - d.shift(t.e).scale(t.c);
    quot.push_back(std::move(t));
  }
  return from_terms(std::move(quot), p_, nvars_);
}

Poly Poly::frobenius() const {
  Poly r = *this;
  for (auto& t : r.terms_)
    for (auto& x : t.e) x *= p_;
  return r;
}

bool Poly::operator==(const Poly& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].e != o.terms_[i].e || terms_[i].c != o.terms_[i].c) return false;
  return true;
}

std::string Poly::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const auto& t = terms_[i];
    bool neg = t.c.is_negative_rational();
    Scalar mag = neg ? -t.c : t.c;
    if (i == 0) {
      if (neg) out += "-";
    } else {
      out += neg ? "-" : "+";
    }
    std::string mono;
    for (int k = 0; k < nvars_; ++k) {
      if (t.e[k] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += names.at(k);
      if (t.e[k] > 1) mono += "^" + std::to_string(t.e[k]);
    }
    if (mono.empty())
      out += mag.to_string();
    else if (mag.is_one())
      out += mono;
    else
      out += mag.to_string() + "*" + mono;
  }
  return out;
}

std::size_t Poly::hash() const {
  std::size_t h = 1469598103934665603ull;
  for (const auto& t : terms_) {
    for (auto x : t.e) h = (h ^ x) * 1099511628211ull;
    h = (h ^ t.c.hash()) * 1099511628211ull;
  }
  return h;
}

Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Poly::from_int(1, a.characteristic(), std::max(a.nvars(), b.nvars()));
  int va = single_var(a), vb = single_var(b);
  if (va >= 0 && va == vb) return univariate_gcd(a, b, va);
  if (va >= 0 && vb >= 0 && va != vb) return Poly::from_int(1, a.characteristic(), a.nvars());
  return multivariate_gcd(a, b);
}

}  // namespace eqf::algebra
