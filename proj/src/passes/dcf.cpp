#include "eqf/passes/dcf.hpp"

#include "eqf/error.hpp"
#include "eqf/ir/shape.hpp"
#include "eqf/passes/common.hpp"

namespace eqf::passes {

using namespace ir;

namespace {

Term delta_of(const Term& q, std::uint32_t p) { return to_sympoly(q, p).derive().to_term(); }

struct DeltaBk {
  std::uint32_t p;
  NameSupply& names;

  // distribute the unique p-th root binding over the Boolean structure;
  // each delta-tame leaf gets its own bound name
  Fml lift(const Fml& b, const std::string& z, const Term& q) {
    std::set<std::string> v;
    free_vars(b, v);
    if (!v.count(z)) return b;
    if (delta_tame_count(b)) {
      std::string w = names.fresh("z");
      return exists_pth(w, q, substitute(b, {{z, var(w)}}));
    }
    std::vector<Fml> kids;
    for (const auto& k : b->kids) kids.push_back(lift(k, z, q));
    switch (b->kind) {
      case FKind::And: return f_and(kids);
      case FKind::Or: return f_or(kids);
      case FKind::Not: return f_not(kids[0]);
      default: throw Error("internal-error", "unliftable leaf " + print(b));
    }
  }

  Fml term(const Term& r) {
    auto inner = innermost(r, {TermKind::Root});
    if (!inner) return eq0(r);
    Term q = (*inner)->args[0];
    std::string z = names.fresh("u");
    Term abstracted = replace_subterm(r, *inner, var(z));
    if (count_kind(abstracted, TermKind::Root) >= count_kind(r, TermKind::Root))
      throw Error("internal-error", "s count did not decrease");
    Fml guard = eq0(canon(delta_of(q, p), p));
    Fml undefined = term(canon(substitute(abstracted, {{z, integer(0)}}), p));
    Fml defined = lift(term(canon(abstracted, p)), z, q);
    return f_or({f_and({f_not(guard), undefined}), f_and({guard, defined})});
  }

  Fml formula(const Fml& f) {
    switch (f->kind) {
      case FKind::Eq0: return term(canon(f->terms[0], p));
      case FKind::True:
      case FKind::False: return f;
      case FKind::And:
      case FKind::Or:
      case FKind::Not: {
        std::vector<Fml> kids;
        for (const auto& k : f->kids) kids.push_back(formula(k));
        if (f->kind == FKind::Not) return f_not(kids[0]);
        return f->kind == FKind::And ? f_and(kids) : f_or(kids);
      }
      default:
        if (contains_term_kind(f, TermKind::Root)) throw Error("shape-violation", "s terms inside " + print(f));
        return f;
    }
  }
};

struct DeltaHom {
  std::uint32_t p;
  std::string x0;

  SymPoly pivot_pow(unsigned e) const { return SymPoly::variable(x0, p).pow(e); }

  Fml run(const Fml& f, std::map<std::string, unsigned> k) const {
    switch (f->kind) {
      case FKind::True: return f;
      case FKind::False: return eq0(var(x0));
      case FKind::Eq0: {
        auto fr = pivot_substitute(to_sympoly(f->terms[0], p), x0, k);
        return eq0((pivot_pow(1) * fr.num).to_term());
      }
      case FKind::And: {
        std::vector<Fml> kids;
        for (const auto& c : f->kids) kids.push_back(run(c, k));
        return f_and(kids);
      }
      case FKind::ExistsPth: {
        // q = q' / x0^(pN - 1); the witness z x0^N satisfies (z x0^N)^p = x0 q'
        auto fr = pivot_substitute(to_sympoly(f->terms[0], p), x0, k);
        unsigned N = (fr.exp + 1 + p - 1) / p;
        if (N == 0) N = 1;
        SymPoly qq = pivot_pow(1 + p * N - 1 - fr.exp) * fr.num;
        k[f->bound[0]] = N;
        return exists_pth(f->bound[0], qq.to_term(), run(f->kids[0], k));
      }
      default: break;
    }
    throw Error("shape-violation", "not delta-tame: " + print(f));
  }
};

struct ToDelta {
  std::uint32_t p;
  NameSupply& names;

  Fml run(const Fml& f) {
    switch (f->kind) {
      case FKind::True:
      case FKind::False:
      case FKind::Eq0: return f;
      case FKind::Pdep: {
        std::vector<SymPoly> q;
        for (const auto& t : f->terms) q.push_back(to_sympoly(t, p));
        return eq0(sym_det(wronskian_matrix(q), p).to_term());
      }
      case FKind::And: {
        std::vector<Fml> kids;
        for (const auto& c : f->kids) kids.push_back(run(c));
        return f_and(kids);
      }
      case FKind::Or: {
        auto blk = match_lambda_block(f, names, false);
        if (!blk || blk->generalized) break;
        std::vector<SymPoly> q;
        for (const auto& t : blk->q) q.push_back(to_sympoly(t, p));
        std::vector<SymPoly> tail(q.begin() + 1, q.end());
        SymMatrix A = wronskian_matrix(tail);
        SymPoly W = sym_det(A, p);
        std::vector<SymPoly> D;
        SymPoly cur = q[0];
        for (int i = 0; i < blk->n; ++i) {
          D.push_back(cur);
          cur = cur.derive();
        }
        std::vector<SymPoly> v = sym_mul(sym_adjugate(A, p), D, p);
        Fml body = canon(run(canon(blk->body, p)), p);
        std::string z0 = names.fresh("w");
        std::map<std::string, unsigned> k;
        for (const auto& z : blk->z) k[z] = 1;
        Fml hom = homogenize_delta(body, k, z0, p);
        Fml out = canon(substitute(hom, {{z0, W.to_term()}}), p);
        SymPoly scale = W.pow(p - 1);
        for (int i = blk->n - 1; i >= 0; --i) out = exists_pth(blk->z[i], (scale * v[i]).to_term(), out);
        return out;
      }
      default: break;
    }
    throw Error("shape-violation", "not lambda-tame: " + print(f));
  }
};

void conjuncts(const Fml& f, std::vector<Fml>& out) {
  if (f->kind == FKind::And) {
    for (const auto& k : f->kids) conjuncts(k, out);
  } else if (f->kind != FKind::True) {
    out.push_back(f);
  }
}

void to_s(const Fml& f, std::uint32_t p, std::vector<Fml>& out) {
  switch (f->kind) {
    case FKind::And:
      for (const auto& k : f->kids) to_s(k, p, out);
      return;
    case FKind::True: return;
    case FKind::False:
    case FKind::Eq0: out.push_back(f); return;
    case FKind::ExistsPth: {
      const Term& q = f->terms[0];
      out.push_back(eq0(delta_of(q, p)));
      to_s(canon(substitute(f->kids[0], {{f->bound[0], sroot(q)}}), p), p, out);
      return;
    }
    default: throw Error("shape-violation", "not delta-tame: " + print(f));
  }
}

}  // namespace

Formula eliminate_s_terms(const Formula& f) {
  if (f.lang != Language::Dcf) throw Error("language-mismatch", "s elimination needs a dcf formula");
  Formula out = f;
  if (!contains_term_kind(f.root, TermKind::Root)) return out;
  NameSupply names;
  names.reserve(f.root);
  DeltaBk bk{f.p, names};
  out.root = canon(bk.formula(canon(f.root, f.p)), f.p);
  return out;
}

Fml homogenize_delta(const Fml& f, const std::map<std::string, unsigned>& k, const std::string& pivot,
                     std::uint32_t p) {
  std::set<std::string> used;
  all_names(f, used);
  if (used.count(pivot)) throw Error("usage-error", "pivot " + pivot + " already occurs");
  DeltaHom h{p, pivot};
  return canon(h.run(canon(f, p), k), p);
}

Formula homogenize_delta(const Formula& f, const std::map<std::string, unsigned>& k, const std::string& pivot) {
  if (f.lang != Language::Dcf) throw Error("language-mismatch", "delta homogenization needs a dcf formula");
  if (!delta_tame_count(f.root)) throw Error("shape-violation", "input is not delta-tame");
  Formula out = f;
  out.root = homogenize_delta(f.root, k, pivot, f.p);
  return out;
}

Formula lambda_to_delta(const Formula& f) {
  if (f.lang != Language::Scf) throw Error("language-mismatch", "translation needs an scf formula");
  if (!lambda_tame_degree(f.root, f.p)) throw Error("shape-violation", "input is not lambda-tame");
  NameSupply names;
  names.reserve(f.root);
  ToDelta t{f.p, names};
  Formula out{Language::Dcf, f.p, canon(t.run(canon(f.root, f.p)), f.p)};
  return out;
}

Formula to_s_formula(const Formula& f) {
  if (f.lang != Language::Dcf) throw Error("language-mismatch", "S-formulas live in dcf");
  if (!delta_tame_count(f.root)) throw Error("shape-violation", "input is not delta-tame");
  Formula out = f;
  if (count_kind(f.root, FKind::ExistsPth) == 0) return out;
  std::vector<Fml> conj;
  to_s(canon(f.root, f.p), f.p, conj);
  out.root = canon(f_and(conj), f.p);
  return out;
}

Formula from_s_formula(const Formula& f) {
  if (f.lang != Language::Dcf) throw Error("language-mismatch", "S-formulas live in dcf");
  if (!is_s_formula(f.root, f.p)) throw Error("shape-violation", "input is not an S-formula");
  const std::uint32_t p = f.p;
  NameSupply names;
  names.reserve(f.root);
  std::vector<Fml> conj;
  conjuncts(canon(f.root, p), conj);

  std::function<Fml(std::vector<Fml>)> build = [&](std::vector<Fml> cs) -> Fml {
    std::optional<Term> inner;
    for (const auto& c : cs)
      if ((inner = innermost(c, {TermKind::Root}))) break;
    if (!inner) return f_and(cs);
    Term r = (*inner)->args[0];
    SymPoly dr = to_sympoly(r, p).derive();
    std::string z = names.fresh("z");
    std::vector<Fml> rest;
    bool dropped = false;
    for (const auto& c : cs) {
      if (!dropped && c->kind == FKind::Eq0) {
        SymPoly s = to_sympoly(c->terms[0], p);
        if (s == dr || s == -dr) {
          dropped = true;
          continue;
        }
      }
      rest.push_back(canon(map_terms(c, [&](const Term& t) { return replace_subterm(t, *inner, var(z)); }), p));
    }
    if (!dropped) throw Error("shape-violation", "no delta guard for " + print(*inner));
    return exists_pth(z, r, build(rest));
  };
  Formula out = f;
  out.root = canon(build(conj), p);
  return out;
}

DcfInstance reduce_instance_dcf(const Formula& f, const std::set<std::string>& params, const oracle::Point& b,
                                const oracle::Oracle& o) {
  if (f.lang != Language::Dcf) throw Error("language-mismatch", "instance reduction needs a dcf formula");
  if (o.kind != oracle::OracleKind::Dcf) throw Error("language-mismatch", "instance reduction needs a dcf oracle");
  const std::uint32_t p = f.p;
  Fml root = canon(f.root, p);
  if (root->kind != FKind::ExistsPth || !delta_tame_count(root))
    throw Error("shape-violation", "instance reduction needs a leading existsPth block");
  const std::string& z = root->bound[0];
  SymPoly q = to_sympoly(root->terms[0], p);
  std::set<std::string> xs = q.plain_names();
  for (const auto& y : params) xs.erase(y);

  NameSupply names;
  names.reserve(root);
  for (const auto& [v, _] : b) names.reserve(v);
  oracle::Evaluator ev(o);
  const std::size_t nb = o.basis.size();
  std::vector<SymPoly> parts(nb, SymPoly(p));
  DcfInstance res;
  auto split = q.coefficients_by([&](const Atom& a) { return !a.opaque && xs.count(a.name); });
  for (const auto& [mono, coef] : split) {
    SymPoly root_mono = SymPoly::constant(1, p);
    for (const auto& [atom, e] : mono) {
      if (e % p) throw Error("shape-violation", "x-monomial of the witness polynomial is not a p-th power");
      root_mono *= SymPoly::variable(atom.name, p, atom.order).pow(e / p);
    }
    algebra::Vector c = ev.coordinates(ev.sympoly(coef, b));
    for (std::size_t i = 0; i < nb; ++i) {
      if (c[i].is_zero()) continue;
      parts[i] += coefficient_poly(c[i], p, names, res.coefficient_names, res.coefficients) * root_mono;
    }
  }
  std::vector<Fml> conj;
  for (std::size_t i = 1; i < nb; ++i)
    if (!parts[i].is_zero()) conj.push_back(eq0(parts[i].to_term()));
  res.side_conditions = conj.size();
  conj.push_back(substitute(root->kids[0], {{z, parts[0].to_term()}}));
  res.psi = f;
  res.psi.root = canon(f_and(conj), p);
  return res;
}

}  // namespace eqf::passes
