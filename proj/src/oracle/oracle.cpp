#include "eqf/oracle/oracle.hpp"

#include <regex>

#include "eqf/algebra/ehull.hpp"
#include "eqf/error.hpp"
#include "eqf/ir/shape.hpp"

namespace eqf::oracle {

using algebra::Matrix;
using algebra::Vector;
using ir::FKind;
using ir::Fml;
using ir::Term;
using ir::TermKind;

namespace {

std::vector<std::string> tnames(int k) {
  if (k == 1) return {"t"};
  std::vector<std::string> v;
  for (int i = 1; i <= k; ++i) v.push_back("t" + std::to_string(i));
  return v;
}

}  // namespace

Oracle Oracle::scf(std::uint32_t p, int e) {
  if (!algebra::is_prime(p) || e < 1 || e > 3) throw Error("usage-error", "scf needs prime p and 1 <= e <= 3");
  Oracle o;
  o.kind = OracleKind::Scf;
  o.p = p;
  o.e = e;
  o.field = algebra::make_field(p, tnames(e));
  o.basis = algebra::standard_p_basis(o.field);
  return o;
}

Oracle Oracle::dcf(std::uint32_t p) {
  if (!algebra::is_prime(p)) throw Error("usage-error", "dcf needs prime p");
  Oracle o;
  o.kind = OracleKind::Dcf;
  o.p = p;
  o.e = 1;
  o.field = algebra::make_field(p, {"t"});
  o.basis = algebra::standard_p_basis(o.field);
  return o;
}

Oracle Oracle::pair(int k) {
  if (k < 1 || k > 3) throw Error("usage-error", "pair needs 1 <= k <= 3");
  Oracle o;
  o.kind = OracleKind::Pair;
  o.p = 0;
  o.e = k;
  o.field = algebra::make_field(0, tnames(k));
  return o;
}

Oracle Oracle::fp(std::uint32_t p) {
  if (!algebra::is_prime(p)) throw Error("usage-error", "fp needs prime p");
  Oracle o;
  o.kind = OracleKind::Fp;
  o.p = p;
  o.field = algebra::make_field(p, {});
  return o;
}

Oracle Oracle::parse(const std::string& spec) {
  static const std::regex scf_re(R"(scf:p=(\d+),e=(\d+))"), dcf_re(R"(dcf:p=(\d+))"), pair_re(R"(pair:k=(\d+))"),
      fp_re(R"(fp:p=(\d+))");
  std::smatch m;
  try {
    if (std::regex_match(spec, m, scf_re)) return scf(std::stoul(m[1]), std::stoi(m[2]));
    if (std::regex_match(spec, m, dcf_re)) return dcf(std::stoul(m[1]));
    if (std::regex_match(spec, m, pair_re)) return pair(std::stoi(m[1]));
    if (std::regex_match(spec, m, fp_re)) return fp(std::stoul(m[1]));
  } catch (const std::out_of_range&) {
  }
  throw Error("usage-error", "unknown oracle '" + spec + "'");
}

std::string Oracle::spec() const {
  switch (kind) {
    case OracleKind::Scf: return "scf:p=" + std::to_string(p) + ",e=" + std::to_string(e);
    case OracleKind::Dcf: return "dcf:p=" + std::to_string(p);
    case OracleKind::Pair: return "pair:k=" + std::to_string(e);
    case OracleKind::Fp: return "fp:p=" + std::to_string(p);
  }
  return "?";
}

void Oracle::check_accepts(const ir::Formula& f) const {
  bool ok = false;
  switch (kind) {
    case OracleKind::Scf: ok = f.lang == ir::Language::Scf && f.p == p; break;
    case OracleKind::Dcf: ok = f.lang == ir::Language::Dcf && f.p == p; break;
    case OracleKind::Pair: ok = f.lang == ir::Language::Pair; break;
    case OracleKind::Fp: ok = f.lang != ir::Language::Pair && f.p == p; break;
  }
  if (!ok)
    throw Error("language-mismatch",
                "oracle " + spec() + " cannot evaluate " + ir::language_name(f.lang) + " p=" + std::to_string(f.p));
}

Point parse_point(const Oracle& o, const nlohmann::json& j) {
  if (!j.is_object()) throw Error("usage-error", "point must be a JSON object");
  Point pt;
  for (const auto& [k, v] : j.items()) {
    if (!v.is_string()) throw Error("usage-error", "point value for " + k + " must be a string");
    pt.emplace(k, algebra::parse_element(o.field, v.get<std::string>()));
  }
  return pt;
}

nlohmann::json point_json(const Point& pt) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [k, v] : pt) j[k] = v.to_string();
  return j;
}

std::string point_text(const Point& pt) { return point_json(pt).dump(); }

FieldElement Evaluator::term(const Term& t, const Point& pt) const {
  const DescPtr& d = o_.field;
  switch (t->kind) {
    case TermKind::Var: {
      auto it = pt.find(t->name);
      if (it == pt.end()) throw Error("unbound-variable", t->name);
      return it->second;
    }
    case TermKind::Int: return FieldElement::from_scalar(d, algebra::Scalar::from_mpz(t->value, d->characteristic));
    case TermKind::Add: {
      FieldElement s = FieldElement::zero(d);
      for (const auto& a : t->args) s += term(a, pt);
      return s;
    }
    case TermKind::Mul: {
      FieldElement s = FieldElement::one(d);
      for (const auto& a : t->args) {
        s *= term(a, pt);
        if (s.is_zero()) break;
      }
      return s;
    }
    case TermKind::Neg: return -term(t->args[0], pt);
    case TermKind::Pow: return term(t->args[0], pt).pow(t->exponent);
    case TermKind::Deriv: return algebra::derive(term(t->args[0], pt));
    case TermKind::Root: return s_function(term(t->args[0], pt));
    case TermKind::Lam:
    case TermKind::LamN: {
      std::vector<FieldElement> a;
      for (const auto& x : t->args) a.push_back(term(x, pt));
      auto z = lambda(a, t->kind == TermKind::Lam ? 1 : t->N, t->n);
      return z ? (*z)[t->i - 1] : FieldElement::zero(d);
    }
    case TermKind::LamP: {
      std::vector<FieldElement> a;
      for (const auto& x : t->args) a.push_back(term(x, pt));
      auto z = lambda_p(a);
      return z ? (*z)[t->i - 1] : FieldElement::zero(d);
    }
  }
  throw Error("internal", "term kind");
}

FieldElement Evaluator::sympoly(const ir::SymPoly& s, const Point& pt) const {
  const DescPtr& d = o_.field;
  std::map<std::pair<std::string, int>, FieldElement> cache;
  auto atom = [&](const ir::Atom& a) -> FieldElement {
    auto key = std::make_pair((a.opaque ? "#" : "") + a.name, a.order);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    FieldElement v;
    if (a.opaque) {
      v = term(s.opaque_defs().at(a.name), pt);
    } else {
      auto p = pt.find(a.name);
      if (p == pt.end()) throw Error("unbound-variable", a.name);
      v = p->second;
    }
    v = algebra::derive_n(v, a.order);
    cache.emplace(key, v);
    return v;
  };
  FieldElement sum = FieldElement::zero(d);
  for (const auto& [m, c] : s.terms()) {
    FieldElement t = FieldElement::from_scalar(d, algebra::Scalar::from_mpz(c, d->characteristic));
    for (const auto& [a, e] : m) t *= atom(a).pow(e);
    sum += t;
  }
  return sum;
}

Vector Evaluator::coordinates(const FieldElement& a) const {
  if (o_.basis.empty()) return {a};
  return *algebra::p_basis_coordinates(a, o_.basis);
}

namespace {

// columns: the coordinate vectors of the stacked entries of each vector
Matrix coordinate_matrix(const Evaluator& ev, const std::vector<FieldElement>& stacked, std::size_t from, int N,
                         int count) {
  std::vector<Vector> cols;
  for (int j = 0; j < count; ++j) {
    Vector c;
    for (int r = 0; r < N; ++r) {
      Vector x = ev.coordinates(stacked[from + j * N + r]);
      c.insert(c.end(), x.begin(), x.end());
    }
    cols.push_back(std::move(c));
  }
  std::size_t rows = cols.empty() ? 0 : cols[0].size();
  return Matrix::from_columns(ev.oracle().field, cols, rows);
}

}  // namespace

bool Evaluator::pdep(const std::vector<FieldElement>& a, int N) const {
  int n = static_cast<int>(a.size()) / N;
  return algebra::rank(coordinate_matrix(*this, a, 0, N, n)) < static_cast<std::size_t>(n);
}

std::optional<Vector> Evaluator::lambda(const std::vector<FieldElement>& stacked, int N, int n) const {
  Matrix c = coordinate_matrix(*this, stacked, N, N, n);
  if (algebra::rank(c) < static_cast<std::size_t>(n)) return std::nullopt;
  Matrix c0 = coordinate_matrix(*this, stacked, 0, N, 1);
  return algebra::solve(c, c0.column(0));
}

bool Evaluator::dep(const std::vector<FieldElement>& a) const { return algebra::constants_linear_dependent(a); }

std::optional<Vector> Evaluator::lambda_p(const std::vector<FieldElement>& a) const {
  std::vector<FieldElement> tail(a.begin() + 1, a.end());
  if (dep(tail) || !dep(a)) return std::nullopt;
  std::size_t n = tail.size();
  Matrix w(o_.field, n, n);
  Vector rhs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) w.at(i, j) = algebra::derive_n(tail[j], static_cast<int>(i));
    rhs.push_back(algebra::derive_n(a[0], static_cast<int>(i)));
  }
  return algebra::solve(w, rhs);
}

FieldElement Evaluator::s_function(const FieldElement& a) const {
  if (!algebra::derive(a).is_zero()) return FieldElement::zero(o_.field);
  auto r = algebra::pth_root(a);
  return r ? *r : FieldElement::zero(o_.field);
}

int macaulay_degree(int r, int dmax) { return std::max({r * (dmax - 1) + 1, dmax, 1}); }

std::vector<std::vector<unsigned>> monomials_of_degree(int r, int d) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> cur(r, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == r - 1) {
      cur[i] = left;
      out.push_back(cur);
      return;
    }
    for (int k = left; k >= 0; --k) {
      cur[i] = k;
      rec(i + 1, left - k);
    }
  };
  if (r > 0) rec(0, d);
  return out;
}

bool Evaluator::tame_slice(const std::vector<std::string>& zeta, const std::vector<Term>& polys, const Point& pt,
                           int degree) const {
  int r = static_cast<int>(zeta.size());
  auto mons = monomials_of_degree(r, degree);
  std::map<std::vector<unsigned>, std::size_t> index;
  for (std::size_t i = 0; i < mons.size(); ++i) index[mons[i]] = i;
  std::set<std::string> zs(zeta.begin(), zeta.end());
  std::vector<Vector> rows;
  for (const auto& q : polys) {
    ir::SymPoly s = ir::to_sympoly(q, o_.p);
    if (s.is_zero()) continue;
    unsigned dq = 0;
    s.homogeneous_in(zs, &dq);
    if (static_cast<int>(dq) > degree) throw Error("degree-too-small", "slice degree below zeta degree");
    // coefficient of each zeta monomial, evaluated at the point
    std::vector<std::pair<std::vector<unsigned>, FieldElement>> coeffs;
    for (const auto& [m, c] : s.coefficients_in(zs)) {
      std::vector<unsigned> e(r, 0);
      for (const auto& [a, k] : m)
        e[std::find(zeta.begin(), zeta.end(), a.name) - zeta.begin()] = k;
      FieldElement v = sympoly(c, pt);
      if (!v.is_zero()) coeffs.emplace_back(e, v);
    }
    if (coeffs.empty()) continue;
    for (const auto& mult : monomials_of_degree(r, degree - static_cast<int>(dq))) {
      Vector row(mons.size(), FieldElement::zero(o_.field));
      for (const auto& [e, v] : coeffs) {
        std::vector<unsigned> sum(r);
        for (int i = 0; i < r; ++i) sum[i] = e[i] + mult[i];
        row[index.at(sum)] = v;
      }
      rows.push_back(std::move(row));
    }
  }
  if (o_.kind == OracleKind::Pair) return constant_span_by_expansion(rows, mons.size()) < mons.size();
  auto closed = algebra::delta_closure(o_.field, rows, mons.size());
  return closed.size() < mons.size();
}

// E = Q(t2..tk) inside Q(t1..tk): after clearing denominators, the E-span of a
// row is spanned by its t1-coefficient vectors.
std::size_t Evaluator::constant_span_by_expansion(const std::vector<Vector>& rows, std::size_t n) const {
  int k = o_.field->nvars();
  std::vector<std::string> rest;
  for (int i = 2; i <= k; ++i) rest.push_back("t" + std::to_string(i));
  DescPtr e = algebra::make_field(0, rest, false);
  std::vector<Vector> parts;
  for (const auto& row : rows) {
    algebra::Poly l = algebra::Poly::from_int(1, 0, k);
    for (const auto& x : row) l = (l * x.den()).exact_div(algebra::gcd(l, x.den()));
    std::map<std::uint32_t, std::vector<std::vector<algebra::PTerm>>> by_power;
    for (std::size_t j = 0; j < n; ++j) {
      if (row[j].is_zero()) continue;
      algebra::Poly num = row[j].num() * l.exact_div(row[j].den());
      for (const auto& t : num.terms()) {
        auto& slot = by_power[t.e[0]];
        if (slot.empty()) slot.resize(n);
        algebra::PTerm r;
        for (int i = 1; i < k; ++i) r.e[i - 1] = t.e[i];
        r.c = t.c;
        slot[j].push_back(r);
      }
    }
    for (auto& [_, slot] : by_power) {
      Vector v(n, FieldElement::zero(e));
      for (std::size_t j = 0; j < n; ++j)
        if (!slot[j].empty())
          v[j] = FieldElement::from_poly(e, algebra::Poly::from_terms(std::move(slot[j]), 0, k - 1));
      parts.push_back(std::move(v));
    }
  }
  if (parts.empty()) return 0;
  return algebra::rank(algebra::Matrix::from_rows(e, parts, n));
}

bool Evaluator::formula(const Fml& f, const Point& pt) const {
  auto values = [&](std::size_t from = 0) {
    std::vector<FieldElement> v;
    for (std::size_t i = from; i < f->terms.size(); ++i) v.push_back(term(f->terms[i], pt));
    return v;
  };
  switch (f->kind) {
    case FKind::Eq0: return term(f->terms[0], pt).is_zero();
    case FKind::Pdep: return pdep(values(), 1);
    case FKind::PdepN: return pdep(values(), f->N);
    case FKind::Dep: return dep(values());
    case FKind::InP: return algebra::derive(term(f->terms[0], pt)).is_zero();
    case FKind::Nonzero:
      for (const auto& t : f->terms)
        if (!term(t, pt).is_zero()) return true;
      return false;
    case FKind::True: return true;
    case FKind::False: return false;
    case FKind::And:
      for (const auto& k : f->kids)
        if (!formula(k, pt)) return false;
      return true;
    case FKind::Or:
      for (const auto& k : f->kids)
        if (formula(k, pt)) return true;
      return false;
    case FKind::Not: return !formula(f->kids[0], pt);
    case FKind::ExistsPth: {
      FieldElement q = term(f->terms[0], pt);
      if (!algebra::derive(q).is_zero()) return false;
      auto z = algebra::pth_root(q);
      if (!z) return false;
      Point inner = pt;
      inner.insert_or_assign(f->bound[0], *z);
      return formula(f->kids[0], inner);
    }
    case FKind::ExistsP: {
      auto info = ir::tame_info(f, o_.p);
      if (!info) throw Error("undecidable-shape", "existsP block is not tame");
      if (!info->linear && !opt_.linearize_nonlinear)
        throw Error("undecidable-shape", "nonlinear existsP block needs the linearization route");
      int D = info->linear ? 1 : macaulay_degree(static_cast<int>(info->zeta.size()), info->degree);
      return tame_slice(info->zeta, info->polys, pt, D);
    }
  }
  throw Error("internal", "formula kind");
}

bool eval(const Oracle& o, const ir::Formula& f, const Point& pt, EvalOptions opt) {
  o.check_accepts(f);
  return Evaluator(o, opt).formula(f.root, pt);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index) { return splitmix64(splitmix64(seed) ^ index); }

algebra::Poly Sampler::poly(int max_deg, bool constants_only) {
  static const int pool[7] = {0, 1, -1, 2, -2, 3, -3};
  const DescPtr& d = o_.field;
  int n = d->nvars();
  int first = constants_only ? 1 : 0;
  std::vector<algebra::PTerm> terms;
  int count = static_cast<int>(below(4)) + 1;
  for (int k = 0; k < count; ++k) {
    algebra::PTerm t;
    int left = static_cast<int>(below(max_deg + 1));
    for (int i = first; i < n; ++i) {
      int ei = static_cast<int>(below(left + 1));
      t.e[i] = static_cast<std::uint32_t>(ei);
      left -= ei;
    }
    t.c = algebra::Scalar::from_int(pool[below(7)], d->characteristic);
    terms.push_back(t);
  }
  return algebra::Poly::from_terms(std::move(terms), d->characteristic, n);
}

FieldElement Sampler::generic() {
  algebra::Poly num = poly(3, false);
  algebra::Poly den;
  do {
    den = below(3) == 0 ? algebra::Poly::from_int(1, o_.field->characteristic, o_.field->nvars()) : poly(3, false);
  } while (den.is_zero());
  return FieldElement(o_.field, num, den);
}

FieldElement Sampler::constant() {
  const DescPtr& d = o_.field;
  if (d->characteristic != 0) {
    if (d->nvars() == 0) return FieldElement::from_int(d, static_cast<long>(below(d->characteristic)));
    return generic().frobenius();
  }
  algebra::Poly num = poly(2, true), den;
  do {
    den = poly(2, true);
  } while (den.is_zero());
  return FieldElement(d, num, den);
}

FieldElement Sampler::element() {
  static const long small[4] = {1, 2, -1, 3};
  const DescPtr& d = o_.field;
  FieldElement v;
  switch (below(16)) {
    case 0: v = FieldElement::zero(d); break;
    case 1: v = FieldElement::from_int(d, small[below(4)]); break;
    case 2: v = constant(); break;
    case 3:
      if (prev_) {
        v = *prev_ * constant();
        break;
      }
      [[fallthrough]];
    default: v = generic(); break;
  }
  prev_ = v;
  return v;
}

Point Sampler::point(const std::set<std::string>& vars) {
  Point pt;
  for (const auto& v : vars) pt.emplace(v, element());
  return pt;
}

}  // namespace eqf::oracle
