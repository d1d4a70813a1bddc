#include "doctest.h"
#include "eqf/algebra/ehull.hpp"
#include "eqf/error.hpp"
#include "eqf/passes/pairs.hpp"
#include "random_formula.hpp"
#include "test_support.hpp"

using namespace eqf;
using namespace eqf::ir;
using namespace eqf::oracle;
using algebra::FieldElement;
using algebra::Matrix;
using algebra::Vector;

namespace {

Formula pair(const std::string& body) { return parse_formula(";; lang: pair  p: 0\n" + body + "\n"); }

FieldElement el(const Oracle& o, const std::string& s) { return algebra::parse_element(o.field, s); }

const EvalOptions kLin{true};

bool ev(const Oracle& o, const Formula& f, const Point& pt) { return eval(o, f, pt, kLin); }

// homogeneous monomials of degree d in n variables
double slice_size(int n, int d) {
  double c = 1;
  for (int i = 1; i < n; ++i) c = c * (d + i) / i;
  return c;
}

// E-hull in Q(t) without derivatives: clear denominators and split every
// row into its t-coefficient vectors over Q.
std::vector<Vector> hull_by_expansion(const Oracle& o, const std::vector<Vector>& rows, std::size_t dim) {
  std::vector<Vector> parts;
  for (const auto& row : rows) {
    algebra::Poly l = algebra::Poly::from_int(1, 0, 1);
    for (const auto& x : row) l = (l * x.den()).exact_div(algebra::gcd(l, x.den()));
    std::map<unsigned, Vector> by_power;
    for (std::size_t j = 0; j < dim; ++j) {
      algebra::Poly num = row[j].num() * l.exact_div(row[j].den());
      for (const auto& t : num.terms()) {
        auto& v = by_power[t.e[0]];
        if (v.empty()) v.assign(dim, FieldElement::zero(o.field));
        v[j] = FieldElement::from_scalar(o.field, t.c);
      }
    }
    for (auto& [_, v] : by_power) parts.push_back(v);
  }
  if (parts.empty()) return {};
  std::vector<std::size_t> piv;
  Matrix r = algebra::rref(Matrix::from_rows(o.field, parts, dim), &piv);
  std::vector<Vector> out;
  for (std::size_t i = 0; i < piv.size(); ++i) out.push_back(r.row(i));
  return out;
}

// small random lambdaP-formulas over x, y
struct PairGen {
  std::mt19937_64& rng;
  int zc = 0;
  int pick(int n) { return static_cast<int>(rng() % n); }
  Term poly(const std::vector<std::string>& vars) {
    static const long coef[4] = {1, 2, -1, 3};
    std::vector<Term> sum;
    for (int k = 1 + pick(2); k > 0; --k) {
      std::vector<Term> f = {integer(coef[pick(4)])};
      for (const auto& v : vars)
        if (pick(2)) f.push_back(var(v));
      sum.push_back(mul(f));
    }
    return add(sum);
  }
  Fml formula(const std::vector<std::string>& vars, int depth) {
    switch (depth == 0 ? pick(2) : pick(4)) {
      case 0: return eq0(poly(vars));
      case 1: return dep({poly(vars), poly(vars)});
      case 2: return f_and({formula(vars, depth - 1), formula(vars, depth - 1)});
      default: {
        LambdaBlock b;
        b.pair = true;
        b.n = 1;
        b.q = {var(vars[pick(static_cast<int>(vars.size()))]), poly(vars)};
        b.z = {"z" + std::to_string(zc++)};
        std::vector<std::string> inner = vars;
        inner.push_back(b.z[0]);
        b.body = formula(inner, depth - 1);
        return build_lambda_block(b);
      }
    }
  }
};

}  // namespace

TEST_CASE("combine examples") {
  auto o = Oracle::pair(1);
  auto a = pair("(existsP (u) (and (nonzero u) (eq0 (* u x))))");
  auto b = pair("(existsP (v) (and (nonzero v) (eq0 (* v y))))");
  auto c = passes::combine_tame(a, b, true);
  CHECK(print(c.root) == "(existsP (u) (and (nonzero u) (eq0 (* u x)) (eq0 (* u y))))");
  auto d = passes::combine_tame(a, b, false);
  CHECK(tame_info(d.root, 0).has_value());
  auto t = pair("true");
  Sampler sm(o, 2);
  for (int i = 0; i < 100; ++i) {
    auto pt = sm.point({"x", "y"});
    bool x0 = pt["x"].is_zero(), y0 = pt["y"].is_zero();
    CHECK(ev(o, c, pt) == (x0 && y0));
    CHECK(ev(o, d, pt) == (x0 || y0));
    CHECK(ev(o, passes::combine_tame(a, t, true), pt) == x0);
    CHECK(ev(o, passes::combine_tame(t, b, false), pt));
  }
  CHECK_THROWS_AS(passes::combine_tame(a, pair("(eq0 x)"), true), Error);
}

TEST_CASE("combine agrees with the oracle on random tame formulas") {
  auto o = Oracle::pair(1);
  std::mt19937_64 rng(5);
  testing::FormulaGen gen(rng, o);
  Sampler sm(o, 12);
  int done = 0;
  while (done < 60) {
    Fml fa = gen.atom(), fb = gen.atom();
    if (fa->kind != FKind::ExistsP || fb->kind != FKind::ExistsP) continue;
    ++done;
    Formula a{Language::Pair, 0, fa}, b{Language::Pair, 0, fb};
    for (bool conj : {true, false}) {
      auto c = passes::combine_tame(a, b, conj);
      REQUIRE(tame_info(c.root, 0).has_value());
      for (int i = 0; i < 4; ++i) {
        auto pt = sm.point({"x", "y"});
        bool want = conj ? ev(o, a, pt) && ev(o, b, pt) : ev(o, a, pt) || ev(o, b, pt);
        CHECK_MESSAGE(ev(o, c, pt) == want, print(fa), " ", print(fb), " at ", point_text(pt));
      }
    }
  }
}

TEST_CASE("lambdaP to tame examples") {
  auto o = Oracle::pair(1);
  auto q = passes::lambdaP_to_tame(pair("(eq0 (+ x 1))"));
  CHECK(print(q.root) == "(existsP (zeta_0) (and (nonzero zeta_0) (eq0 (+ (* x zeta_0) zeta_0))))");
  auto dep2 = pair("(dep 2 y1 y2)");
  auto t = passes::lambdaP_to_tame(dep2);
  CHECK(tame_info(t.root, 0).has_value());
  auto nested = pair("(or (dep 1 x) (and (not (dep 1 x)) (dep 2 y x) (eq0 (+ (lamP 1 1 y x) (- 2)))))");
  auto tn = passes::lambdaP_to_tame(nested);
  Sampler sm(o, 4);
  for (int i = 0; i < 100; ++i) {
    auto pt = sm.point({"x", "y", "y1", "y2"});
    if (i % 3 == 0) pt["y"] = pt["x"] * el(o, "2");
    if (i % 5 == 0) pt["y2"] = pt["y1"] * el(o, "-1/3");
    CHECK(ev(o, dep2, pt) == ev(o, t, pt));
    CHECK(ev(o, nested, pt) == ev(o, tn, pt));
    CHECK(ev(o, pair("(eq0 (+ x 1))"), pt) == ev(o, q, pt));
  }
  CHECK(ev(o, tn, {{"x", el(o, "t")}, {"y", el(o, "2*t")}}));
  CHECK_FALSE(ev(o, tn, {{"x", el(o, "t")}, {"y", el(o, "3*t")}}));
  CHECK_THROWS_AS(passes::lambdaP_to_tame(pair("(not (eq0 x))")), Error);
}

TEST_CASE("lambdaP to tame agrees with the oracle") {
  auto o = Oracle::pair(1);
  std::mt19937_64 rng(21);
  PairGen gen{rng};
  Sampler sm(o, 31);
  int checked = 0;
  for (int k = 0; k < 60; ++k) {
    Formula f{Language::Pair, 0, gen.formula({"x", "y"}, 2)};
    REQUIRE(lambda_p_degree(f.root).has_value());
    auto t = passes::lambdaP_to_tame(f);
    auto info = tame_info(t.root, 0);
    REQUIRE(info.has_value());
    // Segre products grow fast; evaluation of big slices is out of reach
    int nz = static_cast<int>(info->zeta.size());
    int D = macaulay_degree(nz, info->degree);
    if (slice_size(nz, D) > 1500) continue;
    ++checked;
    for (int i = 0; i < 5; ++i) {
      auto pt = sm.point({"x", "y"});
      if (i % 2) pt["y"] = pt["x"] * el(o, std::to_string(1 + i));
      CHECK_MESSAGE(ev(o, f, pt) == ev(o, t, pt), print(f), " at ", point_text(pt));
    }
  }
  CHECK(checked >= 20);
}

TEST_CASE("annihilator examples") {
  auto o = Oracle::pair(1);
  auto a = passes::annihilator(o, {el(o, "2")}, 2);
  REQUIRE(a.dim == 1);
  CHECK(a.basis[0] == Vector{el(o, "-2"), el(o, "1")});
  REQUIRE(a.plucker.has_value());
  CHECK(passes::annihilator(o, {el(o, "t")}, 2).dim == 0);
  CHECK(passes::monomial_enumeration(2, 6) ==
        std::vector<std::vector<unsigned>>{{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}});
  CHECK_THROWS_AS(passes::annihilator(Oracle::dcf(3), {}, 2), Error);
}

TEST_CASE("annihilator dimensions are monotone and orbit invariant") {
  auto o = Oracle::pair(1);
  std::vector<std::vector<std::string>> tuples = {{"t^2"}, {"t", "t^2+1"}, {"t+1", "2"}, {"1/t"}, {"t^3", "t"}};
  for (const auto& tup : tuples)
    for (std::string c : {"1", "-2", "1/2"}) {
      std::vector<FieldElement> a, b;
      for (auto s : tup) {
        a.push_back(el(o, s));
        std::string shifted;
        for (char ch : s) shifted += ch == 't' ? "(t+" + c + ")" : std::string(1, ch);
        b.push_back(el(o, shifted));
      }
      std::size_t prev = 0;
      for (std::size_t n = 1; n <= 6; ++n) {
        auto x = passes::annihilator(o, a, n);
        CHECK(x.dim == passes::annihilator(o, b, n).dim);
        CHECK(x.dim >= prev);
        prev = x.dim;
        // padded annihilators of n stay annihilators of n + 1
        auto mons = passes::monomial_enumeration(a.size(), n + 1);
        for (auto v : x.basis) {
          v.push_back(FieldElement::zero(o.field));
          FieldElement s = FieldElement::zero(o.field);
          for (std::size_t i = 0; i <= n; ++i) {
            FieldElement m = FieldElement::one(o.field);
            for (std::size_t j = 0; j < a.size(); ++j) m *= a[j].pow(mons[i][j]);
            s += v[i] * m;
          }
          CHECK(s.is_zero());
        }
      }
    }
}

TEST_CASE("e-hull examples and closure") {
  auto o = Oracle::pair(1);
  int steps = 0;
  auto h = passes::e_hull(o, {{el(o, "t"), el(o, "1")}}, &steps);
  REQUIRE(h.size() == 2);
  CHECK(h[0] == Vector{el(o, "1"), el(o, "0")});
  CHECK(h[1] == Vector{el(o, "0"), el(o, "1")});
  Vector e = {el(o, "2"), el(o, "-1"), el(o, "1/3")};
  auto he = passes::e_hull(o, {e});
  REQUIRE(he.size() == 1);
  CHECK(algebra::rank(Matrix::from_rows(o.field, {he[0], e}, 3)) == 1);
  std::mt19937_64 rng(4);
  for (int i = 0; i < 60; ++i) {
    std::size_t n = 1 + rng() % 4;
    Vector v;
    for (std::size_t j = 0; j < n; ++j) v.push_back(testing::random_element(rng, o.field, 2));
    int st = 0;
    auto b = passes::e_hull(o, {v}, &st);
    CHECK(st <= static_cast<int>(n) + 1);
    for (const auto& row : b)
      for (const auto& x : row) CHECK(algebra::derive(x).is_zero());
    auto ref = hull_by_expansion(o, {v}, n);
    CHECK(b == ref);
  }
}

TEST_CASE("differential ideal closure") {
  auto o = Oracle::pair(1);
  Point pt{{"a", el(o, "t")}};
  auto c = passes::differential_ideal_closure(o, {"Z1", "Z2"}, {parse_term("(+ (* a Z1) Z2)")}, pt, 1);
  CHECK(c.k == 2);
  CHECK(c.generators.size() == 2);
  auto e = passes::differential_ideal_closure(o, {"Z1", "Z2"}, {parse_term("(+ (* 2 Z1) Z2)")}, pt, 1);
  CHECK(e.k == 1);
  CHECK(e.generators.size() == 1);
  auto one = passes::differential_ideal_closure(o, {"Z1"}, {parse_term("(* a Z1)")}, pt, 1);
  CHECK(one.generators.size() == 1);
  CHECK_THROWS_AS(passes::differential_ideal_closure(o, {"Z1"}, {parse_term("(+ Z1 (^ Z1 2))")}, pt, 2), Error);

  std::mt19937_64 rng(8);
  testing::FormulaGen gen(rng, o);
  Sampler sm(o, 3);
  for (int i = 0; i < 60; ++i) {
    Term g1 = add({mul({gen.poly({"x"}), var("Z1"), var("Z2")}), mul({gen.poly({"x"}), power(var("Z2"), 2)})});
    Term g2 = add({mul({gen.poly({"x"}), var("Z1")}), mul({gen.poly({"x"}), var("Z2")})});
    auto pt2 = sm.point({"x"});
    auto cl = passes::differential_ideal_closure(o, {"Z1", "Z2"}, {g1, g2}, pt2, 2);
    CHECK(cl.k <= static_cast<int>(cl.monomials.size()) + 1);
    for (const auto& row : cl.generators)
      for (const auto& x : row) CHECK(algebra::derive(x).is_zero());
    // the slice rows themselves lie in the span of the generators
    auto raw = passes::differential_ideal_closure(o, {"Z1", "Z2"}, {g1, g2}, pt2, 2);
    std::vector<Vector> both = cl.generators;
    Evaluator ev(o);
    Vector g1row(3, FieldElement::zero(o.field));
    auto s = to_sympoly(g1, 0).coefficients_in({"Z1", "Z2"});
    for (const auto& [m, coef] : s) {
      unsigned e1 = 0;
      for (const auto& [a, k] : m)
        if (a.name == "Z1") e1 = k;
      g1row[e1 == 1 ? 1 : 2] = ev.sympoly(coef, pt2);
    }
    both.push_back(g1row);
    if (!cl.generators.empty())
      CHECK(algebra::rank(Matrix::from_rows(o.field, both, 3)) == cl.generators.size());
    CHECK(raw.generators == cl.generators);
  }
}

TEST_CASE("linearize examples") {
  auto o = Oracle::pair(1);
  auto sq = pair("(existsP (z) (and (nonzero z) (eq0 (* (^ z 2) x))))");
  auto l = passes::linearize_tame(sq, 2);
  CHECK(print(l.root) == "(existsP (xi_0) (and (nonzero xi_0) (eq0 (* x xi_0))))");
  auto lin = pair("(existsP (u v) (and (nonzero u v) (eq0 (+ (* u x) (* v y)))))");
  CHECK(print(passes::linearize_tame(lin, 1)) == print(Formula{Language::Pair, 0, canonicalize(lin.root, 0)}));
  CHECK_THROWS_AS(passes::linearize_tame(sq, 1), Error);
  Sampler sm(o, 1);
  for (int i = 0; i < 50; ++i) {
    auto pt = sm.point({"x"});
    CHECK(ev(o, l, pt) == pt["x"].is_zero());
    CHECK(ev(o, sq, pt) == pt["x"].is_zero());
  }
}

TEST_CASE("linearize agrees with the oracle") {
  auto o = Oracle::pair(1);
  std::vector<std::string> corpus = {
      "(existsP (z) (and (nonzero z) (eq0 (* (^ z 2) x))))",
      "(existsP (u v) (and (nonzero u v) (eq0 (+ (* u u x) (* v v y)))))",
      "(existsP (u v) (and (nonzero u v) (eq0 (+ (* u v) (* v v x))) (eq0 (+ (* u x) (* v y)))))",
      "(existsP (u v) (and (nonzero u v) (eq0 (+ (* u u) (* -1 x v v)))))",
      "(existsP (u v) (and (nonzero u v) (eq0 (+ (* u x) (* v (+ y 1))))))",
  };
  Sampler sm(o, 77);
  for (const auto& s : corpus) {
    auto f = pair(s);
    auto info = tame_info(canonicalize(f.root, 0), 0);
    int D = macaulay_degree(static_cast<int>(info->zeta.size()), info->degree);
    auto l = passes::linearize_tame(f, D);
    std::vector<Point> pts;
    for (int i = 0; i < 200; ++i) {
      auto pt = sm.point({"x", "y"});
      if (i % 4 == 0) pt["y"] = pt["x"] * el(o, "3");
      pts.push_back(pt);
      CHECK_MESSAGE(ev(o, f, pt) == ev(o, l, pt), s, " at ", point_text(pt));
    }
    auto sched = passes::linearize_schedule(f, o, pts, D + 2);
    CHECK(!sched.degrees.empty());
    MESSAGE(s, ": Macaulay degree ", D, ", schedule degree ", sched.chosen);
  }
}

TEST_CASE("simple linear checks") {
  auto o = Oracle::pair(1);
  Matrix dep = Matrix::from_rows(o.field, {{el(o, "t"), el(o, "1"), el(o, "t^2")}, {el(o, "2*t"), el(o, "2"), el(o, "2*t^2")}}, 3);
  auto r = passes::simple_linear_checks(o, dep, 6, 1);
  CHECK(r.lhs);
  CHECK(r.minors_vanish);
  for (bool b : r.dep_samples) CHECK(b);
  Matrix id = Matrix::from_rows(o.field, {{el(o, "1"), el(o, "t")}, {el(o, "0"), el(o, "1")}}, 2);
  auto r2 = passes::simple_linear_checks(o, id, 4, 2);
  CHECK_FALSE(r2.lhs);
  CHECK_FALSE(r2.minors_vanish);
  std::mt19937_64 rng(99);
  int lhs_true = 0;
  for (int i = 0; i < 500; ++i) {
    std::size_t m = 1 + rng() % 3, n = 1 + rng() % 4;
    Matrix a = testing::random_matrix(rng, o.field, m, n, 1);
    if (i % 3 == 0 && m > 1) {
      // make the last row an E-combination of the others
      for (std::size_t j = 0; j < n; ++j) {
        FieldElement s = FieldElement::zero(o.field);
        for (std::size_t k = 0; k + 1 < m; ++k) s += a.at(k, j) * el(o, std::to_string(k + 2));
        a.at(m - 1, j) = s;
      }
    }
    auto rep = passes::simple_linear_checks(o, a, 3, i);
    CHECK(rep.implication_holds);
    lhs_true += rep.lhs;
    // scaling a column by a nonzero field element keeps (2)
    Matrix b = a;
    FieldElement c = testing::random_nonzero(rng, o.field, 1);
    for (std::size_t k = 0; k < m; ++k) b.at(k, 0) = b.at(k, 0) * c;
    CHECK(passes::simple_linear_checks(o, b, 0, i).lhs == rep.lhs);
  }
  CHECK(lhs_true > 50);
}

TEST_CASE("Kolchin evaluation") {
  auto o = Oracle::pair(1);
  Sampler sm(o, 17);
  CHECK(passes::eval_tame_kolchin(o, pair("(existsP (z) (and (nonzero z) (eq0 (* z 0))))"), {}));
  CHECK_FALSE(passes::eval_tame_kolchin(o, pair("(existsP (z) (and (nonzero z) (eq0 (* z 1))))"), {}));
  auto lin = pair("(existsP (u v) (and (nonzero u v) (eq0 (+ (* u x) (* v y)))))");
  auto info = tame_info(lin.root, 0);
  Evaluator evl(o);
  for (int i = 0; i < 200; ++i) {
    auto pt = sm.point({"x", "y"});
    Matrix m(o.field, 1, 2);
    m.at(0, 0) = pt["x"];
    m.at(0, 1) = pt["y"];
    bool direct = !algebra::constant_kernel(m).empty();
    CHECK(passes::eval_tame_kolchin(o, lin, pt) == direct);
    CHECK(ev(o, lin, pt) == direct);
  }
  auto nl = pair("(existsP (u v) (and (nonzero u v) (eq0 (+ (* u u x) (* v v y)))))");
  for (int i = 0; i < 100; ++i) {
    auto pt = sm.point({"x", "y"});
    CHECK(passes::eval_tame_kolchin(o, nl, pt) == ev(o, nl, pt));
  }
  CHECK_THROWS_AS(passes::eval_tame_kolchin(Oracle::dcf(3), lin, {}), Error);
}
