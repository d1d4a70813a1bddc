#include "doctest.h"
#include "eqf/error.hpp"
#include "test_support.hpp"

using namespace eqf::algebra;
using eqf::testing::random_element;
using eqf::testing::random_matrix;
using eqf::testing::random_nonzero;

namespace {

DescPtr qt() { return make_field(0, {"t"}); }
DescPtr f2t() { return make_field(2, {"t"}); }
DescPtr f3t() { return make_field(3, {"t"}); }

FieldElement el(const DescPtr& d, const std::string& s) { return parse_element(d, s); }

}  // namespace

TEST_CASE("derive examples") {
  auto d = qt();
  CHECK(derive(el(d, "t^2")) == el(d, "2*t"));
  CHECK(derive(el(d, "7/3")).is_zero());
  for (auto p : {2u, 3u, 5u}) {
    auto f = make_field(p, {"t"});
    CHECK(derive(el(f, "t^" + std::to_string(p))).is_zero());
  }
  auto nod = make_field(0, {"t"}, false);
  CHECK_THROWS_AS(derive(el(nod, "t")), eqf::Error);
}

TEST_CASE("wronskian and constant dependence examples") {
  auto d = qt();
  CHECK(wronskian({el(d, "t^2+1")}) == el(d, "t^2+1"));
  CHECK(wronskian({el(d, "1"), el(d, "t")}) == el(d, "1"));
  CHECK(wronskian({el(d, "t"), el(d, "2*t")}).is_zero());
  CHECK_FALSE(constants_linear_dependent({el(d, "1"), el(d, "t")}));
  CHECK(constants_linear_dependent({el(d, "t"), el(d, "2*t")}));
  CHECK(constants_linear_dependent({el(d, "0")}));
}

TEST_CASE("adjugate examples") {
  auto d = qt();
  std::mt19937_64 rng(7);
  FieldElement a = random_element(rng, d), b = random_element(rng, d), c = random_element(rng, d),
               e = random_element(rng, d);
  Matrix m = Matrix::from_rows(d, {{a, b}, {c, e}}, 2);
  CHECK(adjugate(m) == Matrix::from_rows(d, {{e, -b}, {-c, a}}, 2));
  CHECK(adjugate(Matrix::identity(d, 3)) == Matrix::identity(d, 3));
  auto f5 = make_field(5, {});
  for (int trial = 0; trial < 50; ++trial) {
    Matrix r = random_matrix(rng, f5, 3, 3);
    FieldElement dt = eqf::testing::leibniz_det(r);
    CHECK(r * adjugate(r) == Matrix::identity(f5, 3).scaled(dt));
  }
  CHECK_THROWS_AS(adjugate(Matrix(d, 2, 3)), eqf::Error);
}

TEST_CASE("kernel basis examples") {
  auto q = make_field(0, {});
  Matrix m = Matrix::from_rows(q, {{el(q, "1"), el(q, "2")}}, 2);
  auto k = kernel_basis(m);
  REQUIRE(k.size() == 1);
  CHECK(k[0] == Vector{el(q, "-2"), el(q, "1")});
  CHECK(kernel_basis(Matrix::identity(q, 3)).empty());
  auto z = kernel_basis(Matrix(q, 2, 2));
  REQUIRE(z.size() == 2);
  CHECK(z[0] == Vector{el(q, "1"), el(q, "0")});
  CHECK(z[1] == Vector{el(q, "0"), el(q, "1")});
}

TEST_CASE("p-basis coordinate examples") {
  auto d = f2t();
  auto basis = standard_p_basis(d);
  REQUIRE(basis.size() == 2);
  CHECK(*p_basis_coordinates(el(d, "1"), basis) == Vector{el(d, "1"), el(d, "0")});
  CHECK(*p_basis_coordinates(el(d, "t"), basis) == Vector{el(d, "0"), el(d, "1")});
  CHECK(*p_basis_coordinates(el(d, "t^2"), basis) == Vector{el(d, "t"), el(d, "0")});
  CHECK_THROWS_AS(p_basis_coordinates(el(qt(), "t"), {Exps{}}), eqf::Error);
  std::vector<Exps> reversed(basis.rbegin(), basis.rend());
  CHECK_THROWS_AS(p_basis_coordinates(el(d, "t"), reversed), eqf::Error);
}

TEST_CASE("field axioms on random triples") {
  for (auto d : {qt(), f2t(), f3t(), make_field(5, {"t", "u"})}) {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
      auto a = random_element(rng, d), b = random_element(rng, d), c = random_element(rng, d);
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a + b == b + a);
      CHECK(a * b == b * a);
      CHECK((a - a).is_zero());
      if (!a.is_zero()) CHECK((a * a.inverse()).is_one());
    }
  }
}

TEST_CASE("derivation is additive and Leibniz") {
  auto twisted = std::make_shared<FieldDescriptor>(*make_field(0, {"t", "u"}));
  // delta(t) = 1, delta(u) = u/(t+1)
  twisted->derivation[1] = {Poly::variable(1, 0, 2), Poly::variable(0, 0, 2) + Poly::from_int(1, 0, 2)};
  for (DescPtr d : {qt(), f2t(), f3t(), DescPtr(twisted)}) {
    std::mt19937_64 rng(5);
    int deg = d->nvars() > 1 ? 1 : 3;
    for (int i = 0; i < 200; ++i) {
      auto a = random_element(rng, d, deg), b = random_element(rng, d, deg);
      CHECK(derive(a + b) == derive(a) + derive(b));
      CHECK(derive(a * b) == a * derive(b) + b * derive(a));
    }
  }
}

TEST_CASE("adjugate identity on random square matrices") {
  for (auto d : {qt(), f2t(), f3t()}) {
    std::mt19937_64 rng(3);
    for (std::size_t n = 1; n <= 4; ++n)
      for (int i = 0; i < 6; ++i) {
        Matrix m = random_matrix(rng, d, n, n, 1);
        CHECK(m * adjugate(m) == Matrix::identity(d, n).scaled(det(m)));
        CHECK(det(m) == eqf::testing::leibniz_det(m));
      }
  }
}

TEST_CASE("wronskian agrees with constant-kernel search on a fixed pool") {
  for (auto d : {qt(), f3t()}) {
    std::mt19937_64 rng(17);
    std::vector<FieldElement> pool;
    pool.push_back(el(d, "1"));
    pool.push_back(el(d, "t"));
    pool.push_back(el(d, "2*t"));
    pool.push_back(el(d, "t^3"));
    pool.push_back(el(d, "0"));
    while (pool.size() < 10) pool.push_back(random_element(rng, d, 2));
    // dependence is symmetric, so non-decreasing index tuples cover every tuple up to order
    std::vector<std::size_t> idx;
    std::function<void(std::size_t)> rec = [&](std::size_t from) {
      if (!idx.empty()) {
        Vector a;
        for (auto i : idx) a.push_back(pool[i]);
        CHECK(constants_linear_dependent(a) == eqf::testing::brute_constant_dependent(a));
      }
      if (idx.size() == 4) return;
      for (std::size_t i = from; i < pool.size(); ++i) {
        idx.push_back(i);
        rec(i);
        idx.pop_back();
      }
    };
    rec(0);
  }
}

TEST_CASE("p-basis coordinates roundtrip") {
  for (auto d : {f2t(), f3t(), make_field(3, {"t", "u"})}) {
    auto basis = standard_p_basis(d);
    std::mt19937_64 rng(23);
    for (int i = 0; i < 300; ++i) {
      auto a = random_element(rng, d);
      auto z = *p_basis_coordinates(a, basis);
      FieldElement s = FieldElement::zero(d);
      for (std::size_t k = 0; k < basis.size(); ++k) s += z[k].frobenius() * monomial_element(d, basis[k]);
      CHECK(s == a);
    }
  }
}

TEST_CASE("element text roundtrip") {
  for (auto d : {qt(), f3t(), make_field(0, {"t", "u"})}) {
    std::mt19937_64 rng(29);
    for (int i = 0; i < 200; ++i) {
      auto a = random_element(rng, d);
      std::string s = a.to_string();
      auto b = parse_element(d, s);
      CHECK(b == a);
      CHECK(b.to_string() == s);
    }
  }
  auto d = qt();
  CHECK(el(d, "(t^2+1)/(2*t)").to_string() == "(1/2*t^2+1/2)/(t)");
  CHECK_THROWS_AS(el(d, "1/0"), eqf::Error);
  CHECK_THROWS_AS(el(d, "t +"), eqf::Error);
  CHECK_THROWS_AS(el(d, "x"), eqf::Error);
}

TEST_CASE("division by zero is an error value") {
  auto d = qt();
  CHECK_FALSE(el(d, "t").checked_div(el(d, "0")).has_value());
  CHECK_THROWS_AS(el(d, "t") / el(d, "0"), eqf::Error);
}

TEST_CASE("multivariate gcd") {
  auto d = make_field(0, {"t", "u"});
  std::mt19937_64 rng(31);
  for (int i = 0; i < 60; ++i) {
    Poly a = eqf::testing::random_poly(rng, d, 2), b = eqf::testing::random_poly(rng, d, 2),
         c = eqf::testing::random_poly(rng, d, 2);
    if (c.is_zero() || a.is_zero() || b.is_zero()) continue;
    Poly g = gcd(a * c, b * c);
    CHECK_NOTHROW(g.exact_div(c.monic()));
    CHECK_NOTHROW((a * c).exact_div(g));
    CHECK_NOTHROW((b * c).exact_div(g));
  }
}
