#include "doctest.h"
#include "eqf/error.hpp"
#include "eqf/ir/shape.hpp"
#include "eqf/passes/scf.hpp"
#include "random_formula.hpp"

using namespace eqf;
using namespace eqf::ir;
using namespace eqf::oracle;
using eqf::testing::TameGen;

namespace {

Formula scf(std::uint32_t p, const std::string& body) {
  return parse_formula(";; lang: scf  p: " + std::to_string(p) + "\n" + body + "\n");
}

Formula wrap(std::uint32_t p, Fml f) { return Formula{Language::Scf, p, f}; }

FieldElement el(const Oracle& o, const std::string& s) { return algebra::parse_element(o.field, s); }

bool lambda_tame_leaves(const Fml& f, std::uint32_t p) {
  if (lambda_tame_degree(f, p)) return true;
  if (f->kind != FKind::And && f->kind != FKind::Or && f->kind != FKind::Not) return false;
  for (const auto& k : f->kids)
    if (!lambda_tame_leaves(k, p)) return false;
  return true;
}

std::set<std::string> vars_of(const Formula& f) {
  std::set<std::string> v;
  free_vars(f.root, v);
  return v;
}

}  // namespace

TEST_CASE("lambda elimination examples") {
  auto plain = scf(2, "(eq0 (+ (* x y) 1))");
  CHECK(print(passes::eliminate_lambda_terms(plain)) == print(plain));

  auto f = scf(2, "(eq0 (lam 1 1 x0 x1))");
  auto g = passes::eliminate_lambda_terms(f);
  REQUIRE(g.root->kind == FKind::Or);
  CHECK(print(g.root->kids[0]) == "(and (not (and (not (pdep 1 x1)) (pdep 2 x0 x1))) (eq0 0))");
  CHECK(lambda_tame_leaves(g.root, 2));
  CHECK_FALSE(contains_term_kind(g.root->kids[0], TermKind::Lam));

  auto o = Oracle::scf(2, 1);
  Sampler sm(o, 1);
  int agree = 0;
  for (int i = 0; i < 500; ++i) {
    auto pt = sm.point({"x0", "x1"});
    agree += eval(o, f, pt) == eval(o, g, pt);
  }
  CHECK(agree == 500);
  CHECK_THROWS_AS(passes::eliminate_lambda_terms(parse_formula(";; lang: dcf  p: 3\n(eq0 x)\n")), Error);
}

TEST_CASE("lambda elimination agrees with the oracle on random term equations") {
  for (auto o : {Oracle::scf(2, 1), Oracle::scf(3, 1), Oracle::scf(2, 2)}) {
    std::mt19937_64 rng(41 + o.p + o.e);
    TameGen gen(rng, o.p);
    Sampler sm(o, 5);
    for (int k = 0; k < 40; ++k) {
      auto f = wrap(o.p, eq0(gen.lam_term({"x", "y"}, 3)));
      auto g = passes::eliminate_lambda_terms(f);
      CHECK(lambda_tame_leaves(g.root, o.p));
      for (int i = 0; i < 15; ++i) {
        auto pt = sm.point({"x", "y"});
        CHECK_MESSAGE(eval(o, f, pt) == eval(o, g, pt), print(f), " at ", point_text(pt));
      }
    }
  }
}

TEST_CASE("lambda homogenization examples") {
  auto f = scf(5, "(eq0 (+ (* x y1) (- 1)))");
  auto h = passes::homogenize_lambda(f, {"y1"}, "y0");
  CHECK(equal(h.root, canonicalize(parse_body("(eq0 (* y0 (+ (* x y1) (- y0))))"), 5)));
  auto o = Oracle::scf(5, 1);
  CHECK(eval(o, f, {{"x", el(o, "1/3")}, {"y1", el(o, "3")}}));
  CHECK(eval(o, h, {{"x", el(o, "1/3")}, {"y0", el(o, "2")}, {"y1", el(o, "6")}}));
  CHECK(eval(o, h, {{"x", el(o, "t")}, {"y0", el(o, "0")}, {"y1", el(o, "t+1")}}));
  CHECK_THROWS_AS(passes::homogenize_lambda(f, {"y1"}, "x"), Error);
  CHECK_THROWS_AS(passes::homogenize_lambda(scf(5, "(not (eq0 x))"), {"x"}, "y0"), Error);
}

TEST_CASE("lambda homogenization keeps degree and meaning") {
  for (auto o : {Oracle::scf(2, 1), Oracle::scf(3, 1)}) {
    std::mt19937_64 rng(7 + o.p);
    TameGen gen(rng, o.p);
    Sampler sm(o, 9);
    for (int k = 0; k < 40; ++k) {
      auto f = wrap(o.p, gen.tame({"x", "y1", "y2"}, 3));
      auto d = lambda_tame_degree(f.root, o.p);
      REQUIRE(d.has_value());
      auto h = passes::homogenize_lambda(f, {"y1", "y2"}, "y0");
      CHECK(lambda_tame_degree(h.root, o.p) == d);
      for (int i = 0; i < 12; ++i) {
        auto pt = sm.point({"x", "y0", "y1", "y2"});
        if (i % 4 == 0) pt["y0"] = FieldElement::zero(o.field);
        bool hv = eval(o, h, pt);
        if (pt["y0"].is_zero()) {
          CHECK(hv);
          continue;
        }
        Point q = pt;
        q["y1"] = pt["y1"] / pt["y0"];
        q["y2"] = pt["y2"] / pt["y0"];
        CHECK_MESSAGE(hv == eval(o, f, q), print(f), " at ", point_text(pt));
      }
    }
  }
}

TEST_CASE("substitution keeps the lambda-tame degree") {
  auto a = passes::substitute_tame(scf(2, "(eq0 x)"), {{"x", parse_term("(* x1 x2)")}});
  CHECK(print(a.root) == "(eq0 (* x1 x2))");
  auto b = passes::substitute_tame(scf(2, "(pdep 2 x y)"), {{"x", parse_term("(^ x 2)")}, {"y", parse_term("(+ x 1)")}});
  CHECK(equal(b.root, canonicalize(parse_body("(pdep 2 (^ x 2) (+ x 1))"), 2)));
  std::mt19937_64 rng(13);
  TameGen gen(rng, 3);
  for (int k = 0; k < 30; ++k) {
    auto f = wrap(3, gen.tame({"x", "y"}, 3));
    auto d = lambda_tame_degree(f.root, 3);
    for (int s = 0; s < 20; ++s) {
      TermMap m{{"x", gen.poly({"x", "y"})}, {"y", gen.poly({"x", "u"})}};
      auto g = passes::substitute_tame(f, m);
      CHECK(lambda_tame_degree(g.root, 3) == d);
    }
  }
  CHECK_THROWS_AS(passes::substitute_tame(scf(2, "(eq0 x)"), {{"x", parse_term("(lam 1 1 x y)")}}), Error);
}

TEST_CASE("instance reduction example") {
  auto o = Oracle::scf(2, 1);
  // q(x^2, y) = 1 + y x^2 at y = t splits over (1, t) into the vector (1, x)
  auto f = scf(2, "(pdep 1 (+ 1 (* y (^ x 2))))");
  auto r = passes::reduce_instance_scf(f, {"y"}, {{"y", el(o, "t")}}, o);
  CHECK(r.basis_size == 2);
  CHECK(r.subsets == 2);
  CHECK(r.skipped == 0);
  CHECK(lambda_tame_degree(r.psi.root, 2) == 0);
  CHECK(r.coefficient_names.empty());
  CHECK(print(r.psi.root) == "(and (eq0 1) (eq0 x))");
  Sampler sm(o, 3);
  for (int i = 0; i < 50; ++i) {
    auto pt = sm.point({"x"});
    pt["y"] = el(o, "t");
    bool a = eval(o, f, pt);
    for (const auto& [k, v] : r.coefficients) pt[k] = v;
    CHECK_FALSE(a);
    CHECK_FALSE(eval(o, r.psi, pt));
  }
  CHECK_THROWS_AS(passes::reduce_instance_scf(scf(2, "(pdep 1 (+ 1 (* y x)))"), {"y"}, {{"y", el(o, "t")}}, o),
                  Error);
  CHECK_THROWS_AS(passes::reduce_instance_scf(scf(2, "(eq0 x)"), {"y"}, {{"y", el(o, "t")}}, o), Error);
}

TEST_CASE("instance reduction agrees with the oracle") {
  for (auto o : {Oracle::scf(2, 1), Oracle::scf(3, 1), Oracle::scf(2, 2)}) {
    std::mt19937_64 rng(17 + o.p * 3 + o.e);
    TameGen gen(rng, o.p);
    Sampler sm(o, 23);
    for (int k = 0; k < 12; ++k) {
      int N = k % 3 == 2 ? 2 : 1;
      auto f = wrap(o.p, gen.block({"x", "y"}, 1 + k % 2, true, {"x"}, N));
      auto D = lambda_tame_degree(f.root, o.p);
      REQUIRE(D.has_value());
      Point b{{"y", sm.generic()}};
      auto r = passes::reduce_instance_scf(f, {"y"}, b, o);
      auto d = lambda_tame_degree(r.psi.root, o.p);
      REQUIRE(d.has_value());
      CHECK(*d <= *D - 1);
      if (r.skipped < r.subsets) CHECK(*d == *D - 1);
      for (int i = 0; i < 12; ++i) {
        auto pt = sm.point({"x"});
        for (const auto& [n, v] : b) pt[n] = v;
        bool a = eval(o, f, pt);
        for (const auto& [n, v] : r.coefficients) pt[n] = v;
        CHECK_MESSAGE(a == eval(o, r.psi, pt), print(f), " at ", point_text(pt));
      }
    }
  }
}
