#include "eqf/ir/shape.hpp"

#include "eqf/ir/sympoly.hpp"

namespace eqf::ir {

nlohmann::json Shape::json() const {
  nlohmann::json j;
  j["shape"] = kind;
  if (degree >= 0) j["degree"] = degree;
  if (quantifiers >= 0) j["quantifiers"] = quantifiers;
  if (r >= 0) j["r"] = r;
  if (k >= 0) j["k"] = k;
  if (equations >= 0) j["equations"] = equations;
  if (kind == "boolean-combination") {
    j["leaves"] = nlohmann::json::array();
    for (const auto& l : leaves) j["leaves"].push_back(l.json());
  }
  return j;
}

namespace {

bool terms_equal(const std::vector<Term>& a, std::size_t from, const std::vector<Term>& b) {
  if (a.size() - from != b.size()) return false;
  for (std::size_t i = 0; i < b.size(); ++i)
    if (!equal(a[from + i], b[i])) return false;
  return true;
}

bool all_function_free(const std::vector<Term>& ts) {
  for (const auto& t : ts)
    if (!is_function_free(t)) return false;
  return true;
}

}  // namespace

Term block_lambda(const LambdaBlock& b, int i) {
  if (b.pair) return lam_p(b.n, i, b.q);
  if (b.generalized) return lam_n(b.N, b.n, i, b.q);
  return lam(b.n, i, b.q);
}

std::optional<LambdaBlock> match_lambda_block(const Fml& f, NameSupply& names, bool pair) {
  if (f->kind != FKind::Or || f->kids.size() != 2) return std::nullopt;
  const Fml& a = f->kids[0];
  const Fml& b = f->kids[1];
  FKind head = pair ? FKind::Dep : FKind::Pdep;
  bool generalized = !pair && a->kind == FKind::PdepN;
  if (a->kind != head && !generalized) return std::nullopt;
  if (!all_function_free(a->terms)) return std::nullopt;
  if (b->kind != FKind::And || b->kids.size() < 2) return std::nullopt;
  const Fml& neg = b->kids[0];
  const Fml& full = b->kids[1];
  if (neg->kind != FKind::Not || !equal(neg->kids[0], a)) return std::nullopt;
  if (full->kind != a->kind || full->n != a->n + 1 || full->N != a->N) return std::nullopt;
  LambdaBlock blk;
  blk.pair = pair;
  blk.generalized = generalized;
  blk.N = generalized ? a->N : 1;
  blk.n = a->n;
  if (!terms_equal(full->terms, blk.N, a->terms)) return std::nullopt;
  blk.q = full->terms;
  std::vector<Fml> rest(b->kids.begin() + 2, b->kids.end());
  Fml body = f_and(rest);
  for (int i = 1; i <= blk.n; ++i) {
    blk.z.push_back(names.fresh("z"));
    Term pat = block_lambda(blk, i);
    Term zi = var(blk.z.back());
    body = map_terms(body, [&](const Term& t) { return replace_subterm(t, pat, zi); });
  }
  blk.body = body;
  return blk;
}

Fml build_lambda_block(const LambdaBlock& b) {
  TermMap m;
  for (int i = 1; i <= b.n; ++i) m[b.z[i - 1]] = block_lambda(b, i);
  Fml body = substitute(b.body, m);
  std::vector<Term> tail(b.q.begin() + b.N, b.q.end());
  Fml small, big;
  if (b.pair) {
    small = dep(tail);
    big = dep(b.q);
  } else if (b.generalized) {
    small = pdep_n(b.N, tail);
    big = pdep_n(b.N, b.q);
  } else {
    small = pdep(tail);
    big = pdep(b.q);
  }
  std::vector<Fml> conj = {f_not(small), big};
  if (body->kind == FKind::And)
    conj.insert(conj.end(), body->kids.begin(), body->kids.end());
  else if (body->kind != FKind::True)
    conj.push_back(body);
  return f_or({small, f_and(conj)});
}

namespace {

std::optional<int> lam_degree(const Fml& f, NameSupply& names, bool pair) {
  switch (f->kind) {
    case FKind::Eq0:
      if (is_function_free(f->terms[0])) return 0;
      return std::nullopt;
    case FKind::True:
    case FKind::False: return 0;
    case FKind::Pdep:
    case FKind::PdepN:
      if (!pair && all_function_free(f->terms)) return 1;
      return std::nullopt;
    case FKind::Dep:
      if (pair && all_function_free(f->terms)) return 1;
      return std::nullopt;
    case FKind::And: {
      int d = 0;
      for (const auto& k : f->kids) {
        auto e = lam_degree(k, names, pair);
        if (!e) return std::nullopt;
        d = std::max(d, *e);
      }
      return d;
    }
    case FKind::Or: {
      auto blk = match_lambda_block(f, names, pair);
      if (!blk) return std::nullopt;
      auto e = lam_degree(blk->body, names, pair);
      if (!e) return std::nullopt;
      return *e + 1;
    }
    default: return std::nullopt;
  }
}

}  // namespace

std::optional<int> lambda_tame_degree(const Fml& f, std::uint32_t p) {
  Fml c = canonicalize(f, p);
  NameSupply names;
  names.reserve(c);
  return lam_degree(c, names, false);
}

std::optional<int> lambda_p_degree(const Fml& f) {
  Fml c = canonicalize(f, 0);
  NameSupply names;
  names.reserve(c);
  return lam_degree(c, names, true);
}

std::optional<int> delta_tame_count(const Fml& f) {
  switch (f->kind) {
    case FKind::Eq0:
      if (contains_kind(f->terms[0], TermKind::Root)) return std::nullopt;
      return 0;
    case FKind::True:
    case FKind::False: return 0;
    case FKind::And: {
      int n = 0;
      for (const auto& k : f->kids) {
        auto e = delta_tame_count(k);
        if (!e) return std::nullopt;
        n += *e;
      }
      return n;
    }
    case FKind::ExistsPth: {
      if (contains_kind(f->terms[0], TermKind::Root)) return std::nullopt;
      auto e = delta_tame_count(f->kids[0]);
      if (!e) return std::nullopt;
      return *e + 1;
    }
    default: return std::nullopt;
  }
}

std::optional<TameInfo> tame_info(const Fml& f, std::uint32_t p) {
  if (f->kind != FKind::ExistsP) return std::nullopt;
  const Fml& body = f->kids[0];
  std::vector<Fml> parts;
  if (body->kind == FKind::And)
    parts = body->kids;
  else
    parts = {body};
  if (parts.empty() || parts[0]->kind != FKind::Nonzero) return std::nullopt;
  const auto& nz = parts[0]->terms;
  if (nz.size() != f->bound.size()) return std::nullopt;
  for (std::size_t i = 0; i < nz.size(); ++i)
    if (nz[i]->kind != TermKind::Var || nz[i]->name != f->bound[i]) return std::nullopt;
  TameInfo info;
  info.zeta = f->bound;
  info.linear = true;
  std::set<std::string> zs(f->bound.begin(), f->bound.end());
  for (std::size_t i = 1; i < parts.size(); ++i) {
    if (parts[i]->kind != FKind::Eq0 || !is_function_free(parts[i]->terms[0])) return std::nullopt;
    SymPoly s = to_sympoly(parts[i]->terms[0], p);
    unsigned deg = 0;
    if (!s.homogeneous_in(zs, &deg)) return std::nullopt;
    info.polys.push_back(parts[i]->terms[0]);
    info.degree = std::max(info.degree, static_cast<int>(deg));
    if (deg != 1 && !s.is_zero()) info.linear = false;
  }
  return info;
}

Fml build_tame(const std::vector<std::string>& zeta, const std::vector<Term>& polys) {
  std::vector<Term> vs;
  for (const auto& z : zeta) vs.push_back(var(z));
  std::vector<Fml> conj = {nonzero(vs)};
  for (const auto& q : polys) conj.push_back(eq0(q));
  return exists_p(zeta, f_and(conj));
}

bool is_polynomial_system(const Fml& f, bool allow_deriv) {
  switch (f->kind) {
    case FKind::Eq0:
      return is_function_free(f->terms[0]) && (allow_deriv || !contains_kind(f->terms[0], TermKind::Deriv));
    case FKind::True:
    case FKind::False: return true;
    case FKind::And:
      for (const auto& k : f->kids)
        if (!is_polynomial_system(k, allow_deriv)) return false;
      return true;
    default: return false;
  }
}

namespace {

void collect_roots(const Term& t, std::vector<Term>& out) {
  if (t->kind == TermKind::Root) out.push_back(t->args[0]);
  for (const auto& a : t->args) collect_roots(a, out);
}

}  // namespace

bool is_s_formula(const Fml& f, std::uint32_t p) {
  std::vector<Fml> parts;
  if (f->kind == FKind::And)
    parts = f->kids;
  else
    parts = {f};
  std::vector<SymPoly> eqs;
  std::vector<Term> roots;
  for (const auto& x : parts) {
    if (x->kind == FKind::True) continue;
    if (x->kind != FKind::Eq0) return false;
    if (contains_kind(x->terms[0], TermKind::Lam) || contains_kind(x->terms[0], TermKind::LamN) ||
        contains_kind(x->terms[0], TermKind::LamP))
      return false;
    eqs.push_back(to_sympoly(x->terms[0], p));
    collect_roots(x->terms[0], roots);
  }
  for (const auto& r : roots) {
    SymPoly dr = to_sympoly(deriv(r), p);
    bool found = false;
    for (const auto& e : eqs)
      if (e == dr || e == -dr) found = true;
    if (!found) return false;
  }
  return true;
}

namespace {

Shape classify_rec(const Fml& f, Language lang, std::uint32_t p) {
  Shape s;
  switch (lang) {
    case Language::Scf:
      if (auto d = lambda_tame_degree(f, p)) {
        s.kind = "lambda-tame";
        s.degree = *d;
        return s;
      }
      break;
    case Language::Dcf:
      if (auto n = delta_tame_count(f)) {
        s.kind = "delta-tame";
        s.quantifiers = *n;
        return s;
      }
      break;
    case Language::Pair:
      if (is_polynomial_system(f, false)) {
        s.kind = "polynomial-system";
        s.equations = f->kind == FKind::And ? static_cast<int>(f->kids.size()) : 1;
        return s;
      }
      if (auto t = tame_info(f, p)) {
        int k = static_cast<int>(t->polys.size());
        s.kind = t->linear && k > 0 ? (k == 1 ? "simple-linear" : "linear-tame") : "tame";
        s.r = static_cast<int>(t->zeta.size());
        s.k = k;
        s.degree = t->degree;
        return s;
      }
      if (auto d = lambda_p_degree(f)) {
        s.kind = "lambdaP";
        s.degree = *d;
        return s;
      }
      break;
  }
  if (f->kind == FKind::And || f->kind == FKind::Or || f->kind == FKind::Not) {
    s.kind = "boolean-combination";
    for (const auto& k : f->kids) {
      Shape c = classify_rec(k, lang, p);
      if (c.kind == "boolean-combination")
        s.leaves.insert(s.leaves.end(), c.leaves.begin(), c.leaves.end());
      else
        s.leaves.push_back(c);
    }
    return s;
  }
  s.kind = "atom";
  return s;
}

}  // namespace

Shape classify(const Formula& f) { return classify_rec(canonicalize(f.root, f.p), f.lang, f.p); }

}  // namespace eqf::ir
