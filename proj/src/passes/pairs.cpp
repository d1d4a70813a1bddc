#include "eqf/passes/pairs.hpp"

#include <random>

#include "eqf/algebra/ehull.hpp"
#include "eqf/error.hpp"
#include "eqf/passes/common.hpp"

namespace eqf::passes {

using namespace ir;
using algebra::FieldElement;
using algebra::Vector;

namespace {

Formula pair_formula(Fml root) { return Formula{Language::Pair, 0, canon(root, 0)}; }

TameInfo as_tame(const Fml& f, NameSupply& names) {
  if (f->kind == FKind::True) return TameInfo{{names.fresh("zeta")}, {}, 0, true};
  if (f->kind == FKind::False) {
    std::string z = names.fresh("zeta");
    return TameInfo{{z}, {var(z)}, 1, true};
  }
  auto t = tame_info(f, 0);
  if (!t) throw Error("shape-violation", "not tame: " + print(f));
  return *t;
}

// bound names moved out of the way of `names`
TameInfo rename_apart(const TameInfo& t, NameSupply& names) {
  TameInfo out = t;
  TermMap m;
  for (auto& z : out.zeta) {
    std::string w = names.fresh("zeta");
    m[z] = var(w);
    z = w;
  }
  for (auto& q : out.polys) q = substitute(q, m);
  return out;
}

Term segre_instance(const Term& q, const std::vector<std::string>& u, const std::vector<std::string>& v,
                    const std::vector<std::vector<std::string>>& xi, std::size_t i, std::size_t j) {
  TermMap m;
  for (std::size_t a = 0; a < u.size(); ++a) m[u[a]] = var(xi[a][j]);
  for (std::size_t b = 0; b < v.size(); ++b) m[v[b]] = var(xi[i][b]);
  return substitute(q, m);
}

TameInfo combine(const TameInfo& a0, const TameInfo& b0, bool conjunction, NameSupply& names) {
  if (conjunction && a0.zeta.size() == 1 && b0.zeta.size() == 1) {
    TameInfo out = a0;
    for (const auto& q : b0.polys) out.polys.push_back(substitute(q, {{b0.zeta[0], var(a0.zeta[0])}}));
    return out;
  }
  TameInfo a = rename_apart(a0, names), b = rename_apart(b0, names);
  std::vector<Term> family;
  if (conjunction) {
    family = a.polys;
    family.insert(family.end(), b.polys.begin(), b.polys.end());
  } else {
    for (const auto& x : a.polys)
      for (const auto& y : b.polys) family.push_back(mul({x, y}));
  }
  return segre(a.zeta, b.zeta, family, names);
}

struct ToTame {
  NameSupply& names;

  TameInfo dep_trick(const std::vector<Term>& ys) {
    // dep_n(y) <-> dep_n(y) or (ldef(0, y) and 1 = 0)
    LambdaBlock blk;
    blk.pair = true;
    blk.n = static_cast<int>(ys.size());
    blk.q.push_back(integer(0));
    blk.q.insert(blk.q.end(), ys.begin(), ys.end());
    for (int i = 0; i < blk.n; ++i) blk.z.push_back(names.fresh("z"));
    blk.body = eq0(integer(1));
    return block(blk);
  }

  TameInfo block(const LambdaBlock& blk) {
    TameInfo body = run(canon(blk.body, 0));
    std::set<std::string> zs(blk.z.begin(), blk.z.end());
    unsigned N = 0;
    for (const auto& q : body.polys) N = std::max(N, to_sympoly(q, 0).degree_in(zs));
    N += 1;
    std::string z0 = names.fresh("z");
    std::map<std::string, unsigned> k;
    for (const auto& z : blk.z) k[z] = 1;
    std::vector<Term> family;
    // zeta_0 q_0 - sum zeta_i q_i
    SymPoly lin = SymPoly::variable(z0, 0) * to_sympoly(blk.q[0], 0);
    for (int i = 1; i <= blk.n; ++i) lin = lin - SymPoly::variable(blk.z[i - 1], 0) * to_sympoly(blk.q[i], 0);
    family.push_back(lin.to_term());
    for (const auto& q : body.polys) {
      auto fr = pivot_substitute(to_sympoly(q, 0), z0, k);
      family.push_back((SymPoly::variable(z0, 0).pow(N - fr.exp) * fr.num).to_term());
    }
    std::vector<std::string> first = {z0};
    first.insert(first.end(), blk.z.begin(), blk.z.end());
    return segre(first, body.zeta, family, names);
  }

  TameInfo run(const Fml& f) {
    switch (f->kind) {
      case FKind::True:
      case FKind::False: return as_tame(f, names);
      case FKind::Eq0: {
        std::string z = names.fresh("zeta");
        return TameInfo{{z}, {canon(mul({var(z), f->terms[0]}), 0)}, 1, true};
      }
      case FKind::Dep: return dep_trick(f->terms);
      case FKind::InP: return dep_trick({integer(1), f->terms[0]});
      case FKind::ExistsP: return rename_apart(as_tame(f, names), names);
      case FKind::And: {
        TameInfo acc = run(f->kids[0]);
        for (std::size_t i = 1; i < f->kids.size(); ++i) acc = combine(acc, run(f->kids[i]), true, names);
        return acc;
      }
      case FKind::Or: {
        if (auto blk = match_lambda_block(f, names, true)) return block(*blk);
        break;
      }
      default: break;
    }
    throw Error("shape-violation", "not a lambdaP-formula: " + print(f));
  }
};

std::set<std::string> as_set(const std::vector<std::string>& v) { return {v.begin(), v.end()}; }

std::vector<unsigned> exponents_of(const Mono& m, const std::vector<std::string>& zeta) {
  std::vector<unsigned> e(zeta.size(), 0);
  for (const auto& [a, k] : m) e[std::find(zeta.begin(), zeta.end(), a.name) - zeta.begin()] = k;
  return e;
}

SymPoly monomial(const std::vector<std::string>& zeta, const std::vector<unsigned>& e) {
  SymPoly m = SymPoly::constant(1, 0);
  for (std::size_t i = 0; i < zeta.size(); ++i) m *= SymPoly::variable(zeta[i], 0).pow(e[i]);
  return m;
}

}  // namespace

TameInfo segre(const std::vector<std::string>& u, const std::vector<std::string>& v, const std::vector<Term>& polys,
               NameSupply& names, std::uint32_t p) {
  std::vector<std::vector<std::string>> xi(u.size(), std::vector<std::string>(v.size()));
  TameInfo out;
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) {
      xi[i][j] = names.fresh("xi");
      out.zeta.push_back(xi[i][j]);
    }
  std::set<std::string> seen;
  for (const auto& q : polys)
    for (std::size_t i = 0; i < u.size(); ++i)
      for (std::size_t j = 0; j < v.size(); ++j) {
        Term t = canon(segre_instance(q, u, v, xi, i, j), p);
        if (seen.insert(print(t)).second) out.polys.push_back(t);
      }
  return out;
}

Formula combine_tame(const Formula& a, const Formula& b, bool conjunction) {
  if (a.lang != Language::Pair || b.lang != Language::Pair) throw Error("language-mismatch", "tame formulas are pair");
  NameSupply names;
  names.reserve(a.root);
  names.reserve(b.root);
  TameInfo ta = as_tame(canon(a.root, 0), names), tb = as_tame(canon(b.root, 0), names);
  TameInfo out = combine(ta, tb, conjunction, names);
  return pair_formula(build_tame(out.zeta, out.polys));
}

Formula lambdaP_to_tame(const Formula& f) {
  if (f.lang != Language::Pair) throw Error("language-mismatch", "lambdaP-formulas are pair");
  if (!lambda_p_degree(f.root) && f.root->kind != FKind::ExistsP && f.root->kind != FKind::InP)
    throw Error("shape-violation", "not a lambdaP-formula");
  NameSupply names;
  names.reserve(f.root);
  ToTame t{names};
  TameInfo out = t.run(canon(f.root, 0));
  return pair_formula(build_tame(out.zeta, out.polys));
}

Formula linearize_tame(const Formula& f, int d) {
  if (f.lang != Language::Pair) throw Error("language-mismatch", "tame formulas are pair");
  auto info = tame_info(canon(f.root, 0), 0);
  if (!info) throw Error("shape-violation", "not tame");
  if (d < info->degree || d < 1) throw Error("degree-too-small", "d below the zeta-degree");
  const auto& zeta = info->zeta;
  int r = static_cast<int>(zeta.size());
  auto mons = oracle::monomials_of_degree(r, d);
  std::vector<std::string> xi;
  NameSupply names;
  names.reserve(f.root);
  if (d == 1) {
    xi = zeta;
  } else {
    for (std::size_t i = 0; i < mons.size(); ++i) xi.push_back(names.fresh("xi"));
  }
  std::set<std::string> zs = as_set(zeta);
  std::vector<Term> forms;
  for (const auto& q : info->polys) {
    SymPoly s = to_sympoly(q, 0);
    if (s.is_zero()) continue;
    unsigned dq = 0;
    s.homogeneous_in(zs, &dq);
    for (const auto& mult : oracle::monomials_of_degree(r, d - static_cast<int>(dq))) {
      SymPoly prod = monomial(zeta, mult) * s;
      SymPoly form(0);
      for (const auto& [m, c] : prod.coefficients_in(zs)) {
        auto e = exponents_of(m, zeta);
        std::size_t i = std::find(mons.begin(), mons.end(), e) - mons.begin();
        form += SymPoly::variable(xi[i], 0) * c;
      }
      forms.push_back(form.to_term());
    }
  }
  return pair_formula(build_tame(xi, forms));
}

DegreeSchedule linearize_schedule(const Formula& f, const oracle::Oracle& o, const std::vector<oracle::Point>& pts,
                                  int max_degree) {
  auto info = tame_info(canon(f.root, 0), 0);
  if (!info) throw Error("shape-violation", "not tame");
  DegreeSchedule s;
  for (int d = std::max(1, info->degree); d <= max_degree; ++d) {
    Formula lin = linearize_tame(f, d);
    std::vector<bool> v;
    for (const auto& pt : pts) v.push_back(oracle::eval(o, lin, pt));
    s.degrees.push_back(d);
    s.verdicts.push_back(v);
    std::size_t n = s.verdicts.size();
    if (n >= 2 && s.verdicts[n - 1] == s.verdicts[n - 2]) {
      s.chosen = s.degrees[n - 2];
      break;
    }
  }
  return s;
}

std::vector<std::vector<unsigned>> monomial_enumeration(std::size_t vars, std::size_t n) {
  std::vector<std::vector<unsigned>> out;
  for (int d = 0; out.size() < n; ++d) {
    for (const auto& m : oracle::monomials_of_degree(static_cast<int>(vars), d)) {
      if (out.size() == n) break;
      out.push_back(m);
    }
    if (vars == 0) break;
  }
  return out;
}

Annihilator annihilator(const oracle::Oracle& o, const std::vector<FieldElement>& a, std::size_t n) {
  if (o.kind != oracle::OracleKind::Pair) throw Error("language-mismatch", "annihilators live in the pair oracle");
  Annihilator res;
  algebra::Matrix m(o.field, 1, n);
  auto mons = monomial_enumeration(a.size(), n);
  for (std::size_t i = 0; i < mons.size(); ++i) {
    FieldElement v = FieldElement::one(o.field);
    for (std::size_t j = 0; j < a.size(); ++j) v *= a[j].pow(mons[i][j]);
    m.at(0, i) = v;
  }
  res.basis = algebra::constant_kernel(m);
  res.dim = res.basis.size();
  if (res.dim > 0) res.plucker = exterior::wedge(o.field, res.basis);
  return res;
}

std::vector<Vector> e_hull(const oracle::Oracle& o, const std::vector<Vector>& vs, int* steps) {
  if (o.p != 0) throw Error("language-mismatch", "E-hulls need the char 0 pair oracle");
  if (vs.empty()) return {};
  return algebra::delta_closure(o.field, vs, vs[0].size(), steps);
}

SliceClosure differential_ideal_closure(const oracle::Oracle& o, const std::vector<std::string>& zeta,
                                        const std::vector<Term>& polys, const oracle::Point& pt, int d) {
  oracle::Evaluator ev(o);
  SliceClosure res;
  int r = static_cast<int>(zeta.size());
  res.monomials = oracle::monomials_of_degree(r, d);
  std::set<std::string> zs = as_set(zeta);
  std::vector<Vector> rows;
  for (const auto& g : polys) {
    SymPoly s = to_sympoly(g, o.p);
    if (s.is_zero()) continue;
    unsigned dg = 0;
    if (!s.homogeneous_in(zs, &dg)) throw Error("inhomogeneous", print(g));
    if (static_cast<int>(dg) > d) throw Error("degree-too-small", print(g));
    for (const auto& mult : oracle::monomials_of_degree(r, d - static_cast<int>(dg))) {
      Vector row(res.monomials.size(), FieldElement::zero(o.field));
      for (const auto& [m, c] : (monomial(zeta, mult) * s).coefficients_in(zs)) {
        auto e = exponents_of(m, zeta);
        std::size_t i = std::find(res.monomials.begin(), res.monomials.end(), e) - res.monomials.begin();
        row[i] = ev.sympoly(c, pt);
      }
      rows.push_back(row);
    }
  }
  res.generators = algebra::delta_closure(o.field, rows, res.monomials.size(), &res.k);
  return res;
}

SimpleLinearReport simple_linear_checks(const oracle::Oracle& o, const algebra::Matrix& a, int samples,
                                        std::uint64_t seed) {
  if (o.kind != oracle::OracleKind::Pair) throw Error("language-mismatch", "simple linear checks need a pair oracle");
  SimpleLinearReport rep;
  std::size_t m = a.rows(), n = a.cols();
  rep.lhs = !algebra::constant_kernel(a.transpose()).empty();
  rep.minors_vanish = true;
  std::vector<std::size_t> all_rows(m);
  for (std::size_t i = 0; i < m; ++i) all_rows[i] = i;
  for (const auto& J : k_subsets(n, m))
    if (!algebra::det(a.submatrix(all_rows, J)).is_zero()) rep.minors_vanish = false;
  // r_j: random integer polynomials of degree <= 2 in the entries of a
  std::mt19937_64 rng(seed);
  auto entry = [&]() { return a.at(rng() % m, rng() % n); };
  for (int s = 0; s < samples; ++s) {
    std::vector<FieldElement> r;
    for (std::size_t j = 0; j < n; ++j) {
      FieldElement v = FieldElement::from_int(o.field, static_cast<long>(rng() % 5) - 2);
      for (int t = 0; t < 2; ++t) {
        FieldElement mono = FieldElement::from_int(o.field, static_cast<long>(rng() % 5) - 2);
        for (unsigned e = rng() % 3; e > 0; --e) mono *= entry();
        v += mono;
      }
      r.push_back(v);
    }
    Vector b;
    for (std::size_t i = 0; i < m; ++i) {
      FieldElement s2 = FieldElement::zero(o.field);
      for (std::size_t j = 0; j < n; ++j) s2 += a.at(i, j) * r[j];
      b.push_back(s2);
    }
    rep.dep_samples.push_back(algebra::wronskian(b).is_zero());
  }
  if (rep.lhs) {
    bool all_dep = std::all_of(rep.dep_samples.begin(), rep.dep_samples.end(), [](bool x) { return x; });
    rep.implication_holds = rep.minors_vanish && all_dep;
  }
  return rep;
}

bool eval_tame_kolchin(const oracle::Oracle& o, const Formula& f, const oracle::Point& pt, int* rounds) {
  if (o.kind != oracle::OracleKind::Pair) throw Error("language-mismatch", "Kolchin evaluation needs a pair oracle");
  auto info = tame_info(canon(f.root, 0), 0);
  if (!info) throw Error("shape-violation", "not tame");
  int D = oracle::macaulay_degree(static_cast<int>(info->zeta.size()), info->degree);
  Formula lin = linearize_tame(f, D);
  auto li = tame_info(lin.root, 0);
  auto closure = differential_ideal_closure(o, li->zeta, li->polys, pt, 1);
  if (rounds) *rounds = closure.k;
  return closure.generators.size() < li->zeta.size();
}

}  // namespace eqf::passes
