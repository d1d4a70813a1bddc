#include "eqf/harness/registry.hpp"

#include <algorithm>

#include "eqf/error.hpp"
#include "eqf/ir/shape.hpp"
#include "eqf/passes/dcf.hpp"
#include "eqf/passes/pairs.hpp"
#include "eqf/passes/scf.hpp"

namespace eqf::harness {

using namespace eqf::ir;
using oracle::Oracle;
using oracle::Point;

namespace {

const std::vector<std::string> kPasses = {
    "identity", "canary",      "lambda-bk", "lambda-hom", "scf-reduce",      "delta-bk", "delta-hom",
    "lambda-to-delta", "s-form", "s-roundtrip", "dcf-reduce", "segre", "lambdap-to-tame", "linearize",
};

std::vector<std::string> free_list(const Formula& f) {
  std::set<std::string> s;
  free_vars(f.root, s);
  return {s.begin(), s.end()};
}

bool ev(const Oracle& o, const Formula& f, const Point& pt) {
  return oracle::eval(o, f, pt, oracle::EvalOptions{o.kind == oracle::OracleKind::Pair});
}

Point transfer(const Point& pt, const Oracle& to) {
  Point out;
  for (const auto& [k, v] : pt) out[k] = algebra::parse_element(to.field, v.to_string());
  return out;
}

std::string pivot_name(const Formula& f, const std::string& want) {
  NameSupply names;
  names.reserve(f.root);
  std::set<std::string> used;
  all_names(f.root, used);
  return used.count(want) ? names.fresh(want) : want;
}

bool leaves_ok(const Fml& f, const std::function<bool(const Fml&)>& leaf) {
  if (leaf(f)) return true;
  if (f->kind != FKind::And && f->kind != FKind::Or && f->kind != FKind::Not) return false;
  return std::all_of(f->kids.begin(), f->kids.end(), [&](const Fml& k) { return leaves_ok(k, leaf); });
}

Fml bump_equations(const Fml& f) {
  switch (f->kind) {
    case FKind::Eq0: return eq0(add({f->terms[0], integer(1)}));
    case FKind::And:
    case FKind::Or: {
      std::vector<Fml> ks;
      for (const auto& k : f->kids) ks.push_back(bump_equations(k));
      return f->kind == FKind::And ? f_and(ks) : f_or(ks);
    }
    case FKind::Not: return f_not(bump_equations(f->kids[0]));
    case FKind::ExistsP: return exists_p(f->bound, bump_equations(f->kids[0]));
    case FKind::ExistsPth: return exists_pth(f->bound[0], f->terms[0], bump_equations(f->kids[0]));
    default: return f;
  }
}

Formula fold_tame(const Formula& f, const Fml& g) {
  if (g->kind == FKind::And || g->kind == FKind::Or) {
    Formula acc = fold_tame(f, g->kids[0]);
    for (std::size_t i = 1; i < g->kids.size(); ++i)
      acc = passes::combine_tame(acc, fold_tame(f, g->kids[i]), g->kind == FKind::And);
    return acc;
  }
  return Formula{f.lang, f.p, g};
}

Point instance_values(const std::vector<std::string>& params, const Oracle& o, std::uint64_t seed,
                      const PassOptions& opt) {
  oracle::Sampler sm(o, seed);
  Point b;
  for (const auto& y : params) {
    if (opt.params && opt.params->count(y))
      b[y] = opt.params->at(y);
    else
      b[y] = sm.generic();
  }
  return b;
}

std::vector<std::string> split_params(const Formula& f, std::vector<std::string>& xs) {
  std::vector<std::string> ys;
  for (const auto& v : free_list(f)) (v[0] == 'y' ? ys : xs).push_back(v);
  return ys;
}

void plain_check(Prepared& r, const Oracle& o, const Formula& f) {
  Formula g = r.output;
  r.check = [o, f, g](const Point& pt) { return Verdict{ev(o, f, pt), ev(o, g, pt)}; };
}

}  // namespace

std::vector<std::string> pass_names() { return kPasses; }

bool is_pass(const std::string& name) { return std::find(kPasses.begin(), kPasses.end(), name) != kPasses.end(); }

Oracle default_oracle(const Formula& f) {
  switch (f.lang) {
    case Language::Scf: return Oracle::scf(f.p, 1);
    case Language::Dcf: return Oracle::dcf(f.p);
    case Language::Pair: return Oracle::pair(1);
  }
  throw Error("internal", "language");
}

Prepared prepare(const std::string& pass, const Formula& f, const Oracle& o, std::uint64_t seed,
                 const PassOptions& opt) {
  if (!is_pass(pass)) throw Error("usage-error", "unknown pass " + pass);
  o.check_accepts(f);
  Prepared r;
  r.sample_oracle = o;
  r.vars = free_list(f);
  std::uint32_t p = f.p;

  if (pass == "identity" || pass == "canary") {
    r.output = pass == "identity" ? f : Formula{f.lang, p, bump_equations(f.root)};
    r.shape = "none";
    plain_check(r, o, f);
  } else if (pass == "lambda-bk" || pass == "delta-bk") {
    bool lam = pass == "lambda-bk";
    r.output = lam ? passes::eliminate_lambda_terms(f) : passes::eliminate_s_terms(f);
    r.shape = lam ? "boolean combination of lambda-tame" : "boolean combination of delta-tame";
    r.shape_ok = leaves_ok(r.output.root, [&](const Fml& k) {
      return lam ? lambda_tame_degree(k, p).has_value() : delta_tame_count(k).has_value();
    });
    plain_check(r, o, f);
  } else if (pass == "lambda-hom") {
    auto d = lambda_tame_degree(f.root, p);
    if (!d) throw Error("shape-violation", "lambda-hom needs a lambda-tame input");
    std::vector<std::string> xs;
    auto ys = split_params(f, xs);
    if (ys.empty()) ys = r.vars;
    std::string y0 = pivot_name(f, "y0");
    r.output = passes::homogenize_lambda(f, {ys.begin(), ys.end()}, y0);
    r.shape = "lambda-tame degree kept";
    r.shape_ok = lambda_tame_degree(r.output.root, p) == d;
    r.info = {{"degree", *d}, {"pivot", y0}, {"homogenized", ys}};
    r.vars.push_back(y0);
    Formula g = r.output;
    r.check = [o, f, g, ys, y0](const Point& pt) {
      Verdict v{true, ev(o, g, pt)};
      if (pt.at(y0).is_zero()) return v;
      Point q = pt;
      for (const auto& y : ys) q[y] = pt.at(y) / pt.at(y0);
      v.expected = ev(o, f, q);
      return v;
    };
    r.force_zero = [y0, o](Point& pt) { pt[y0] = oracle::FieldElement::zero(o.field); };
  } else if (pass == "delta-hom") {
    auto c = delta_tame_count(f.root);
    if (!c) throw Error("shape-violation", "delta-hom needs a delta-tame input");
    std::map<std::string, unsigned> k;
    for (std::size_t i = 0; i < r.vars.size(); ++i) k[r.vars[i]] = 1 + i % 2;
    std::string x0 = pivot_name(f, "x0");
    r.output = passes::homogenize_delta(f, k, x0);
    r.shape = "delta-tame count kept";
    r.shape_ok = delta_tame_count(r.output.root) == c;
    r.info = {{"quantifiers", *c}, {"pivot", x0}, {"weights", k}};
    r.vars.push_back(x0);
    Formula g = r.output;
    r.check = [o, f, g, k, x0](const Point& pt) {
      Verdict v{true, ev(o, g, pt)};
      if (pt.at(x0).is_zero()) return v;
      Point q = pt;
      for (const auto& [x, w] : k) q[x] = pt.at(x) / pt.at(x0).pow(w);
      v.expected = ev(o, f, q);
      return v;
    };
    r.force_zero = [x0, o](Point& pt) { pt[x0] = oracle::FieldElement::zero(o.field); };
  } else if (pass == "lambda-to-delta") {
    if (o.kind != oracle::OracleKind::Scf || o.e != 1)
      throw Error("usage-error", "lambda-to-delta samples in scf:p=..,e=1");
    r.output = passes::lambda_to_delta(f);
    r.shape = "delta-tame";
    r.shape_ok = delta_tame_count(r.output.root).has_value();
    Oracle d = Oracle::dcf(p);
    r.info = {{"target", d.spec()}};
    Formula g = r.output;
    r.check = [o, d, f, g](const Point& pt) { return Verdict{ev(o, f, pt), ev(d, g, transfer(pt, d))}; };
  } else if (pass == "s-form" || pass == "s-roundtrip") {
    auto c = delta_tame_count(f.root);
    if (!c) throw Error("shape-violation", "s-form needs a delta-tame input");
    Formula s = passes::to_s_formula(f);
    if (pass == "s-form") {
      r.output = s;
      r.shape = "S-formula";
      r.shape_ok = is_s_formula(s.root, p);
    } else {
      r.output = passes::from_s_formula(s);
      auto back = delta_tame_count(r.output.root);
      r.shape = "S-formula, then delta-tame with no more quantifiers";
      r.shape_ok = is_s_formula(s.root, p) && back && *back <= *c;
      r.info = {{"quantifiers_in", *c}, {"quantifiers_out", back ? *back : -1}};
    }
    plain_check(r, o, f);
  } else if (pass == "scf-reduce" || pass == "dcf-reduce") {
    std::vector<std::string> xs;
    auto ys = split_params(f, xs);
    Point b = instance_values(ys, o, seed, opt);
    r.vars = xs;
    Point coeffs;
    if (pass == "scf-reduce") {
      auto D = lambda_tame_degree(f.root, p);
      auto inst = passes::reduce_instance_scf(f, {ys.begin(), ys.end()}, b, o);
      auto d = lambda_tame_degree(inst.psi.root, p);
      r.output = inst.psi;
      r.shape = "lambda-tame degree drops by one";
      r.shape_ok = D && d && *d == *D - 1;
      r.info = {{"degree_in", D ? *D : -1},          {"degree_out", d ? *d : -1},
                {"basis_size", inst.basis_size},     {"coefficient_rank", inst.coefficient_rank},
                {"subsets", inst.subsets},           {"skipped", inst.skipped},
                {"coefficients", inst.coefficient_names.size()}};
      coeffs = inst.coefficients;
    } else {
      auto C = delta_tame_count(f.root);
      auto inst = passes::reduce_instance_dcf(f, {ys.begin(), ys.end()}, b, o);
      auto c = delta_tame_count(inst.psi.root);
      r.output = inst.psi;
      r.shape = "delta-tame count drops by one";
      r.shape_ok = C && c && *c == *C - 1;
      r.info = {{"quantifiers_in", C ? *C : -1},
                {"quantifiers_out", c ? *c : -1},
                {"side_conditions", inst.side_conditions},
                {"coefficients", inst.coefficient_names.size()}};
      coeffs = inst.coefficients;
    }
    r.info["params"] = oracle::point_json(b);
    Formula g = r.output;
    r.check = [o, f, g, b, coeffs](const Point& pt) {
      Point q = pt;
      for (const auto& [n, v] : b) q[n] = v;
      bool a = ev(o, f, q);
      for (const auto& [n, v] : coeffs) q[n] = v;
      return Verdict{a, ev(o, g, q)};
    };
  } else if (pass == "segre") {
    Fml root = canonicalize(boolean_normal(f.root), 0);
    r.output = fold_tame(f, root);
    auto info = tame_info(r.output.root, 0);
    r.shape = "tame";
    r.shape_ok = info || r.output.root->kind == FKind::True || r.output.root->kind == FKind::False;
    if (info) r.info = {{"zeta", info->zeta.size()}, {"degree", info->degree}, {"equations", info->polys.size()}};
    plain_check(r, o, f);
  } else if (pass == "lambdap-to-tame") {
    r.output = passes::lambdaP_to_tame(f);
    auto info = tame_info(r.output.root, 0);
    r.shape = "tame";
    r.shape_ok = info.has_value();
    if (info) r.info = {{"zeta", info->zeta.size()}, {"degree", info->degree}, {"equations", info->polys.size()}};
    plain_check(r, o, f);
  } else if (pass == "linearize") {
    auto in = tame_info(canonicalize(f.root, 0), 0);
    if (!in) throw Error("shape-violation", "linearize needs a tame input");
    int d = opt.degree >= 0 ? opt.degree : oracle::macaulay_degree(static_cast<int>(in->zeta.size()), in->degree);
    r.output = passes::linearize_tame(f, d);
    auto info = tame_info(r.output.root, 0);
    r.shape = "linear tame";
    r.shape_ok = info && info->linear;
    r.info = {{"degree", d}, {"xi", info ? info->zeta.size() : 0}};
    // empirical degree: first d whose verdicts agree with d+1 on a few samples
    oracle::Sampler sm(o, seed);
    std::vector<Point> pts;
    std::set<std::string> fv;
    free_vars(f.root, fv);
    for (int i = 0; i < 6; ++i) pts.push_back(sm.point(fv));
    r.info["schedule_degree"] = passes::linearize_schedule(f, o, pts, d + 1).chosen;
    plain_check(r, o, f);
  }
  validate(r.output);
  return r;
}

}  // namespace eqf::harness
