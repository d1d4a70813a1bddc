#include "eqf/passes/scf.hpp"

#include "eqf/error.hpp"
#include "eqf/ir/shape.hpp"
#include "eqf/passes/common.hpp"

namespace eqf::passes {

using namespace ir;

namespace {

int lam_count(const Term& t) { return count_kind(t, TermKind::Lam) + count_kind(t, TermKind::LamN); }

bool mentions(const Fml& f, const std::vector<std::string>& zs) {
  std::set<std::string> v;
  free_vars(f, v);
  for (const auto& z : zs)
    if (v.count(z)) return true;
  return false;
}

struct LamBk {
  std::uint32_t p;
  NameSupply& names;

  // the lambda-tame leaves mentioning z are wrapped in the block of q
  Fml lift(const Fml& b, const LambdaBlock& shell) {
    if (!mentions(b, shell.z)) return b;
    if (lambda_tame_degree(b, p)) {
      LambdaBlock blk = shell;
      blk.body = b;
      return canon(build_lambda_block(blk), p);
    }
    std::vector<Fml> kids;
    for (const auto& k : b->kids) kids.push_back(lift(k, shell));
    switch (b->kind) {
      case FKind::And: return f_and(kids);
      case FKind::Or: return f_or(kids);
      case FKind::Not: return f_not(kids[0]);
      default: throw Error("internal-error", "unliftable leaf " + print(b));
    }
  }

  Fml term(const Term& r) {
    auto inner = innermost(r, {TermKind::Lam, TermKind::LamN});
    if (!inner) return eq0(r);
    const Term& l = *inner;
    LambdaBlock shell;
    shell.generalized = l->kind == TermKind::LamN;
    shell.N = shell.generalized ? l->N : 1;
    shell.n = l->n;
    shell.q = l->args;
    Term abstracted = r;
    TermMap zero;
    for (int j = 1; j <= shell.n; ++j) {
      shell.z.push_back(names.fresh("z"));
      abstracted = replace_subterm(abstracted, block_lambda(shell, j), var(shell.z.back()));
      zero[shell.z.back()] = integer(0);
    }
    if (lam_count(abstracted) >= lam_count(r)) throw Error("internal-error", "lambda count did not decrease");
    std::vector<Term> tail(shell.q.begin() + shell.N, shell.q.end());
    Fml def = shell.generalized ? f_and({f_not(pdep_n(shell.N, tail)), pdep_n(shell.N, shell.q)}) : ldef(shell.q);
    Fml undefined = term(canon(substitute(abstracted, zero), p));
    Fml defined = lift(term(canon(abstracted, p)), shell);
    return f_or({f_and({f_not(def), undefined}), f_and({def, defined})});
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
        if (contains_term_kind(f, TermKind::Lam) || contains_term_kind(f, TermKind::LamN))
          throw Error("shape-violation", "lambda terms inside " + print(f));
        return f;
    }
  }
};

struct LamHom {
  std::uint32_t p;
  std::string y0;
  NameSupply& names;

  Term times_pivot(const SymPoly& s, unsigned e) const {
    return (SymPoly::variable(y0, p).pow(e) * s).to_term();
  }

  // common scaling of a tuple: every entry over the same pivot power
  std::vector<Term> scale_tuple(const std::vector<Term>& ts, const std::map<std::string, unsigned>& k) const {
    std::vector<PivotFraction> fr;
    unsigned top = 0;
    for (const auto& t : ts) {
      fr.push_back(pivot_substitute(to_sympoly(t, p), y0, k));
      top = std::max(top, fr.back().exp);
    }
    std::vector<Term> out;
    for (const auto& f : fr) out.push_back(times_pivot(f.num, 1 + top - f.exp));
    return out;
  }

  Fml run(const Fml& f, const std::map<std::string, unsigned>& k) {
    switch (f->kind) {
      case FKind::True: return f;
      case FKind::False: return eq0(var(y0));
      case FKind::Eq0: {
        auto fr = pivot_substitute(to_sympoly(f->terms[0], p), y0, k);
        return eq0(times_pivot(fr.num, 1));
      }
      case FKind::Pdep: return pdep(scale_tuple(f->terms, k));
      case FKind::PdepN: return pdep_n(f->N, scale_tuple(f->terms, k));
      case FKind::And: {
        std::vector<Fml> kids;
        for (const auto& c : f->kids) kids.push_back(run(c, k));
        return f_and(kids);
      }
      case FKind::Or: {
        auto blk = match_lambda_block(f, names, false);
        if (!blk) break;
        blk->q = scale_tuple(blk->q, k);
        blk->body = blk->body->kind == FKind::True ? blk->body : run(canon(blk->body, p), k);
        return build_lambda_block(*blk);
      }
      default: break;
    }
    throw Error("shape-violation", "not lambda-tame: " + print(f));
  }
};

}  // namespace

Formula eliminate_lambda_terms(const Formula& f) {
  if (f.lang != Language::Scf) throw Error("language-mismatch", "lambda elimination needs an scf formula");
  NameSupply names;
  names.reserve(f.root);
  LamBk bk{f.p, names};
  Formula out = f;
  if (!contains_term_kind(f.root, TermKind::Lam) && !contains_term_kind(f.root, TermKind::LamN)) return out;
  out.root = canon(bk.formula(canon(f.root, f.p)), f.p);
  return out;
}

Fml homogenize_lambda(const Fml& f, const std::set<std::string>& ys, const std::string& pivot, std::uint32_t p) {
  std::set<std::string> names_in;
  all_names(f, names_in);
  if (names_in.count(pivot)) throw Error("usage-error", "pivot " + pivot + " already occurs");
  NameSupply names(names_in);
  names.reserve(pivot);
  std::map<std::string, unsigned> k;
  for (const auto& y : ys) k[y] = 1;
  LamHom h{p, pivot, names};
  return canon(h.run(canon(f, p), k), p);
}

Formula homogenize_lambda(const Formula& f, const std::set<std::string>& ys, const std::string& pivot) {
  if (f.lang != Language::Scf) throw Error("language-mismatch", "lambda homogenization needs an scf formula");
  if (!lambda_tame_degree(f.root, f.p)) throw Error("shape-violation", "input is not lambda-tame");
  Formula out = f;
  out.root = homogenize_lambda(f.root, ys, pivot, f.p);
  return out;
}

Formula substitute_tame(const Formula& f, const TermMap& m) {
  for (const auto& [v, t] : m)
    if (!is_function_free(t)) throw Error("shape-violation", "substituted term for " + v + " is not function-free");
  auto before = lambda_tame_degree(f.root, f.p);
  Formula out = f;
  out.root = canon(substitute(f.root, m), f.p);
  auto after = lambda_tame_degree(out.root, f.p);
  if (before && (!after || *after != *before)) throw Error("internal-error", "substitution changed the degree");
  return out;
}

ScfInstance reduce_instance_scf(const Formula& f, const std::set<std::string>& params, const oracle::Point& b,
                                const oracle::Oracle& o) {
  if (f.lang != Language::Scf) throw Error("language-mismatch", "instance reduction needs an scf formula");
  if (o.kind != oracle::OracleKind::Scf) throw Error("language-mismatch", "instance reduction needs an scf oracle");
  const std::uint32_t p = f.p;
  Fml root = canon(f.root, p);
  std::set<std::string> names_in;
  all_names(root, names_in);
  NameSupply names(names_in);
  for (const auto& [v, _] : b) names.reserve(v);

  LambdaBlock blk;
  bool bare = false;
  if (auto m = match_lambda_block(root, names, false)) {
    blk = *m;
  } else if (root->kind == FKind::Pdep || root->kind == FKind::PdepN) {
    bare = true;
    blk.generalized = root->kind == FKind::PdepN;
    blk.N = blk.generalized ? root->N : 1;
    blk.n = root->n;
    blk.q = root->terms;
  } else {
    throw Error("shape-violation", "instance reduction needs a single block");
  }
  if (!bare && !lambda_tame_degree(blk.body, p)) throw Error("shape-violation", "block body is not lambda-tame");

  std::set<std::string> xs;
  for (const auto& t : blk.q) collect_vars(t, xs);
  for (const auto& y : params) xs.erase(y);

  oracle::Evaluator ev(o);
  const std::size_t nb = o.basis.size();
  const std::size_t N = blk.N, n = blk.n;
  ScfInstance res;
  res.basis_size = nb;
  auto& d = o.field;

  // cols[k][nu * N + r]: coordinate nu of row r of vector k, a polynomial in x, b'
  std::vector<std::vector<SymPoly>> cols(n + 1, std::vector<SymPoly>(N * nb, SymPoly(p)));
  std::vector<algebra::Vector> value_coords;
  std::size_t first = bare ? 1 : 0;
  for (std::size_t k = first; k <= n; ++k)
    for (std::size_t r = 0; r < N; ++r) {
      const Term& entry = blk.q[(bare ? k - 1 : k) * N + r];
      for (const auto& [mono, coef] : to_sympoly(entry, p).coefficients_in(xs)) {
        SymPoly root_mono = SymPoly::constant(1, p);
        for (const auto& [atom, e] : mono) {
          if (e % p) throw Error("shape-violation", "x enters " + print(entry) + " other than through x^p");
          root_mono *= SymPoly::variable(atom.name, p).pow(e / p);
        }
        algebra::Vector c = ev.coordinates(ev.sympoly(coef, b));
        value_coords.push_back(c);
        for (std::size_t nu = 0; nu < nb; ++nu) {
          if (c[nu].is_zero()) continue;
          cols[k][nu * N + r] += coefficient_poly(c[nu], p, names, res.coefficient_names, res.coefficients) * root_mono;
        }
      }
    }
  if (!value_coords.empty())
    res.coefficient_rank = algebra::rank(algebra::Matrix::from_rows(d, value_coords, nb));

  std::string y0 = names.fresh("y0");
  std::vector<Fml> conj;
  for (const auto& J : k_subsets(N * nb, n)) {
    ++res.subsets;
    SymMatrix QJ;
    std::vector<SymPoly> q0J;
    for (auto row : J) {
      std::vector<SymPoly> line;
      for (std::size_t k = 1; k <= n; ++k) line.push_back(cols[k][row]);
      QJ.push_back(line);
      q0J.push_back(cols[0][row]);
    }
    SymPoly dJ = sym_det(QJ, p);
    if (dJ.is_zero()) {
      ++res.skipped;
      continue;
    }
    if (bare) {
      conj.push_back(eq0(dJ.to_term()));
      continue;
    }
    std::vector<SymPoly> rJ = sym_mul(sym_adjugate(QJ, p), q0J, p);
    // psi^J(z) = (q_0 = Q z) and psi(x, b, z)
    std::vector<Fml> sys;
    for (std::size_t row = 0; row < N * nb; ++row) {
      SymPoly e = cols[0][row];
      for (std::size_t k = 1; k <= n; ++k) e = e - cols[k][row] * SymPoly::variable(blk.z[k - 1], p);
      if (!e.is_zero()) sys.push_back(eq0(e.to_term()));
    }
    sys.push_back(blk.body);
    std::set<std::string> zs(blk.z.begin(), blk.z.end());
    Fml hom = homogenize_lambda(f_and(sys), zs, y0, p);
    TermMap m;
    m[y0] = dJ.to_term();
    for (std::size_t k = 0; k < n; ++k) m[blk.z[k]] = rJ[k].to_term();
    conj.push_back(canon(substitute(hom, m), p));
  }
  res.psi = f;
  res.psi.root = canon(f_and(conj), p);
  return res;
}

}  // namespace eqf::passes
