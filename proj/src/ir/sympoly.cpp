#include "eqf/ir/sympoly.hpp"

#include "eqf/error.hpp"

namespace eqf::ir {

bool Atom::operator<(const Atom& o) const {
  if (opaque != o.opaque) return !opaque;
  if (name != o.name) return name < o.name;
  return order < o.order;
}

unsigned mono_degree(const Mono& m) {
  unsigned d = 0;
  for (const auto& [a, e] : m) d += e;
  return d;
}

bool MonoOrder::operator()(const Mono& a, const Mono& b) const {
  unsigned da = mono_degree(a), db = mono_degree(b);
  if (da != db) return da > db;
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (!(a[i].first == b[i].first)) return a[i].first < b[i].first;
    if (a[i].second != b[i].second) return a[i].second > b[i].second;
  }
  return a.size() < b.size();
}

namespace {

Mono mono_mul(const Mono& a, const Mono& b) {
  Mono r;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      r.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      r.push_back(b[j++]);
    } else {
      r.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i;
      ++j;
    }
  }
  return r;
}

}  // namespace

mpz_class SymPoly::reduce(const mpz_class& c) const {
  if (p_ == 0) return c;
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), c.get_mpz_t(), p_);
  if (r * 2 > p_) r -= p_;
  return r;
}

void SymPoly::add_term(const Mono& m, const mpz_class& c) {
  mpz_class v = reduce(c);
  if (v == 0) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, v);
    return;
  }
  it->second = reduce(it->second + v);
  if (it->second == 0) terms_.erase(it);
}

void SymPoly::absorb_defs(const SymPoly& o) {
  for (const auto& [k, v] : o.defs_) defs_.emplace(k, v);
}

SymPoly SymPoly::constant(const mpz_class& c, std::uint32_t p) {
  SymPoly s(p);
  s.add_term({}, c);
  return s;
}

SymPoly SymPoly::variable(const std::string& name, std::uint32_t p, int order) {
  SymPoly s(p);
  s.add_term({{Atom{false, name, order}, 1}}, 1);
  return s;
}

SymPoly SymPoly::opaque(const Term& t, std::uint32_t p) {
  SymPoly s(p);
  std::string key = print(t);
  s.defs_.emplace(key, t);
  s.add_term({{Atom{true, key, 0}, 1}}, 1);
  return s;
}

bool SymPoly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }

mpz_class SymPoly::constant_value() const {
  auto it = terms_.find(Mono{});
  return it == terms_.end() ? mpz_class(0) : it->second;
}

unsigned SymPoly::total_degree() const { return terms_.empty() ? 0 : mono_degree(terms_.begin()->first); }

unsigned SymPoly::degree_in(const std::set<std::string>& names) const {
  unsigned best = 0;
  for (const auto& [m, c] : terms_) {
    unsigned d = 0;
    for (const auto& [a, e] : m)
      if (!a.opaque && names.count(a.name)) d += e;
    best = std::max(best, d);
  }
  return best;
}

bool SymPoly::homogeneous_in(const std::set<std::string>& names, unsigned* deg) const {
  std::optional<unsigned> seen;
  for (const auto& [m, c] : terms_) {
    unsigned d = 0;
    for (const auto& [a, e] : m)
      if (!a.opaque && names.count(a.name)) {
        if (a.order != 0) return false;
        d += e;
      }
    if (seen && *seen != d) return false;
    seen = d;
  }
  if (deg) *deg = seen.value_or(0);
  return true;
}

std::set<std::string> SymPoly::plain_names() const {
  std::set<std::string> s;
  for (const auto& [m, c] : terms_)
    for (const auto& [a, e] : m)
      if (!a.opaque) s.insert(a.name);
  return s;
}

SymPoly SymPoly::operator+(const SymPoly& o) const {
  SymPoly r = *this;
  r.p_ = std::max(p_, o.p_);
  r.absorb_defs(o);
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

SymPoly SymPoly::operator-() const {
  SymPoly r(p_);
  r.defs_ = defs_;
  for (const auto& [m, c] : terms_) r.add_term(m, -c);
  return r;
}

SymPoly SymPoly::operator-(const SymPoly& o) const { return *this + (-o); }

SymPoly SymPoly::operator*(const SymPoly& o) const {
  SymPoly r(std::max(p_, o.p_));
  r.defs_ = defs_;
  r.absorb_defs(o);
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) r.add_term(mono_mul(ma, mb), ca * cb);
  return r;
}

SymPoly SymPoly::scale(const mpz_class& c) const {
  SymPoly r(p_);
  r.defs_ = defs_;
  for (const auto& [m, v] : terms_) r.add_term(m, v * c);
  return r;
}

SymPoly SymPoly::pow(unsigned e) const {
  SymPoly r = constant(1, p_), b = *this;
  r.defs_ = defs_;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

SymPoly SymPoly::derive() const {
  SymPoly r(p_);
  r.defs_ = defs_;
  for (const auto& [m, c] : terms_)
    for (std::size_t i = 0; i < m.size(); ++i) {
      Mono rest;
      for (std::size_t j = 0; j < m.size(); ++j)
        if (j != i) rest.push_back(m[j]);
        else if (m[j].second > 1) rest.emplace_back(m[j].first, m[j].second - 1);
      Atom da = m[i].first;
      da.order += 1;
      r.add_term(mono_mul(rest, {{da, 1}}), c * m[i].second);
    }
  return r;
}

SymPoly SymPoly::substitute(const std::map<std::string, SymPoly>& sub) const {
  std::map<std::pair<std::string, int>, SymPoly> cache;
  auto image = [&](const Atom& a) -> SymPoly {
    auto key = std::make_pair(a.name, a.order);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    SymPoly v = sub.at(a.name);
    for (int k = 0; k < a.order; ++k) v = v.derive();
    cache.emplace(key, v);
    return v;
  };
  SymPoly r(p_);
  r.defs_ = defs_;
  for (const auto& [m, c] : terms_) {
    SymPoly t = constant(c, p_);
    Mono kept;
    for (const auto& [a, e] : m) {
      if (!a.opaque && sub.count(a.name))
        t = t * image(a).pow(e);
      else
        kept.emplace_back(a, e);
    }
    SymPoly km(p_);
    km.add_term(kept, 1);
    r = r + t * km;
  }
  for (const auto& [k, v] : sub) r.absorb_defs(v);
  return r;
}

std::map<Mono, SymPoly, MonoOrder> SymPoly::coefficients_by(const std::function<bool(const Atom&)>& key) const {
  std::map<Mono, SymPoly, MonoOrder> out;
  for (const auto& [m, c] : terms_) {
    Mono k, rest;
    for (const auto& ae : m) (key(ae.first) ? k : rest).push_back(ae);
    auto it = out.find(k);
    if (it == out.end()) {
      it = out.emplace(k, SymPoly(p_)).first;
      it->second.defs_ = defs_;
    }
    it->second.add_term(rest, c);
  }
  return out;
}

std::map<Mono, SymPoly, MonoOrder> SymPoly::coefficients_in(const std::set<std::string>& names) const {
  return coefficients_by([&](const Atom& a) { return !a.opaque && a.order == 0 && names.count(a.name); });
}

Term SymPoly::to_term() const {
  if (terms_.empty()) return integer(0);
  std::vector<Term> summands;
  for (const auto& [m, c] : terms_) {
    std::vector<Term> factors;
    mpz_class mag = abs(c);
    if (mag != 1 || m.empty()) factors.push_back(integer(mag));
    for (const auto& [a, e] : m) {
      Term base = a.opaque ? defs_.at(a.name) : var(a.name);
      base = deriv_n(base, a.order);
      factors.push_back(e == 1 ? base : power(base, e));
    }
    Term t = mul(std::move(factors));
    summands.push_back(c < 0 ? neg(t) : t);
  }
  return add(std::move(summands));
}

SymPoly to_sympoly(const Term& t, std::uint32_t p) {
  switch (t->kind) {
    case TermKind::Var: return SymPoly::variable(t->name, p);
    case TermKind::Int: return SymPoly::constant(t->value, p);
    case TermKind::Add: {
      SymPoly s(p);
      for (const auto& a : t->args) s += to_sympoly(a, p);
      return s;
    }
    case TermKind::Mul: {
      SymPoly s = SymPoly::constant(1, p);
      for (const auto& a : t->args) s *= to_sympoly(a, p);
      return s;
    }
    case TermKind::Neg: return -to_sympoly(t->args[0], p);
    case TermKind::Pow: return to_sympoly(t->args[0], p).pow(t->exponent);
    case TermKind::Deriv: return to_sympoly(t->args[0], p).derive();
    case TermKind::Lam:
    case TermKind::LamN:
    case TermKind::LamP:
    case TermKind::Root: {
      TermNode n = *t;
      for (auto& a : n.args) a = canonical(a, p);
      return SymPoly::opaque(std::make_shared<const TermNode>(std::move(n)), p);
    }
  }
  throw Error("internal", "unknown term kind");
}

Term canonical(const Term& t, std::uint32_t p) { return to_sympoly(t, p).to_term(); }

namespace {

PivotFraction frac_mul(const PivotFraction& a, const PivotFraction& b) { return {a.num * b.num, a.exp + b.exp}; }

PivotFraction frac_add(const PivotFraction& a, const PivotFraction& b, const SymPoly& x0) {
  unsigned e = std::max(a.exp, b.exp);
  return {a.num * x0.pow(e - a.exp) + b.num * x0.pow(e - b.exp), e};
}

PivotFraction frac_derive(const PivotFraction& f, const SymPoly& x0) {
  if (f.exp == 0) return {f.num.derive(), 0};
  // delta(P / x0^m) = (delta(P) x0 - m P delta(x0)) / x0^(m+1)
  return {f.num.derive() * x0 - f.num.scale(f.exp) * x0.derive(), f.exp + 1};
}

}  // namespace

PivotFraction pivot_substitute(const SymPoly& f, const std::string& pivot, const std::map<std::string, unsigned>& k) {
  std::uint32_t p = f.characteristic();
  SymPoly x0 = SymPoly::variable(pivot, p);
  std::map<std::pair<std::string, int>, PivotFraction> cache;
  auto image = [&](const Atom& a) -> PivotFraction {
    auto key = std::make_pair(a.name, a.order);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    PivotFraction v{SymPoly::variable(a.name, p), k.at(a.name)};
    for (int j = 0; j < a.order; ++j) v = frac_derive(v, x0);
    cache.emplace(key, v);
    return v;
  };
  PivotFraction acc{SymPoly(p), 0};
  for (const auto& [m, c] : f.terms()) {
    PivotFraction t{SymPoly::constant(c, p), 0};
    Mono kept;
    for (const auto& [a, e] : m) {
      auto it = k.find(a.name);
      if (!a.opaque && it != k.end() && it->second > 0) {
        PivotFraction img = image(a);
        for (unsigned j = 0; j < e; ++j) t = frac_mul(t, img);
      } else {
        kept.emplace_back(a, e);
      }
    }
    SymPoly km = f.scale(0);
    km.add_term(kept, 1);
    t.num = t.num * km;
    acc = frac_add(acc, t, x0);
  }
  acc.num = acc.num + f.scale(0);
  return acc;
}

}  // namespace eqf::ir
