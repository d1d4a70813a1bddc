#include <set>

#include "doctest.h"
#include "eqf/error.hpp"
#include "eqf/exterior/plucker.hpp"
#include "test_support.hpp"

using namespace eqf::exterior;
using eqf::algebra::make_field;
using eqf::algebra::parse_element;

namespace {

Vector vec(const DescPtr& d, std::initializer_list<long> xs) {
  Vector v;
  for (long x : xs) v.push_back(FieldElement::from_int(d, x));
  return v;
}

Vector unit(const DescPtr& d, std::size_t n, std::size_t i) {
  Vector v(n, FieldElement::zero(d));
  v[i] = FieldElement::one(d);
  return v;
}

bool proportional(const PluckerVector& a, const PluckerVector& b) {
  std::size_t i = 0;
  while (i < b.coords.size() && b.coords[i].is_zero()) ++i;
  if (i == b.coords.size() || a.coords[i].is_zero()) return false;
  return a == b.scaled(a.coords[i] / b.coords[i]);
}

FieldElement eval_quadric(const std::vector<QuadraticTerm>& eq, const PluckerVector& z) {
  FieldElement s = FieldElement::zero(z.field);
  for (const auto& t : eq) {
    FieldElement p = z.coords[t.a] * z.coords[t.b];
    s += t.sign < 0 ? -p : p;
  }
  return s;
}

}  // namespace

TEST_CASE("subset enumeration") {
  auto s = subsets(4, 2);
  REQUIRE(s.size() == 6);
  CHECK(s[0] == Subset{0, 1});
  CHECK(s[5] == Subset{2, 3});
  for (std::size_t i = 0; i < s.size(); ++i) CHECK(subset_index(s[i], 4) == i);
  auto t = subsets(6, 3);
  for (std::size_t i = 0; i < t.size(); ++i) CHECK(subset_index(t[i], 6) == i);
}

TEST_CASE("wedge examples") {
  auto q = make_field(0, {});
  CHECK(wedge(q, {unit(q, 3, 0), unit(q, 3, 1)}).coords == vec(q, {1, 0, 0}));
  CHECK(wedge(q, {vec(q, {1, 1, 0}), vec(q, {0, 1, 1})}).coords == vec(q, {1, 1, 1}));
  auto a = wedge(q, {vec(q, {1, 2, 0}), vec(q, {3, 1, 5})});
  auto b = wedge(q, {vec(q, {3, 1, 5}), vec(q, {1, 2, 0})});
  CHECK(a == b.scaled(FieldElement::from_int(q, -1)));
  CHECK_THROWS_AS(wedge(q, {vec(q, {1, 2}), vec(q, {1, 2, 3})}), eqf::Error);
}

TEST_CASE("contraction examples") {
  auto q = make_field(0, {});
  auto z = wedge(q, {unit(q, 3, 0), unit(q, 3, 1)});
  CHECK(contract({0}, z) == unit(q, 3, 1));
  CHECK(contract({2}, z) == vec(q, {0, 0, 0}));
  CHECK(contract({1}, z) == vec(q, {-1, 0, 0}));
  auto z2 = wedge(q, {vec(q, {1, 4, 2}), vec(q, {0, 1, 7})});
  PluckerVector sum = z;
  for (std::size_t i = 0; i < sum.coords.size(); ++i) sum.coords[i] += z2.coords[i];
  for (std::size_t e = 0; e < 3; ++e) {
    Vector l = contract({e}, sum), r1 = contract({e}, z), r2 = contract({e}, z2);
    for (std::size_t j = 0; j < 3; ++j) CHECK(l[j] == r1[j] + r2[j]);
  }
  CHECK_THROWS_AS(contract({0, 1}, z), eqf::Error);
}

TEST_CASE("decomposability examples") {
  auto q = make_field(0, {});
  auto z = wedge(q, {unit(q, 4, 0), unit(q, 4, 1)});
  CHECK(is_decomposable(z));
  auto w = wedge(q, {unit(q, 4, 2), unit(q, 4, 3)});
  PluckerVector s = z;
  for (std::size_t i = 0; i < s.coords.size(); ++i) s.coords[i] += w.coords[i];
  CHECK_FALSE(is_decomposable(s));
  // p12 p34 - p13 p24 + p14 p23 at e1^e2 + e3^e4
  auto c = s.coords;
  CHECK((c[0] * c[5] - c[1] * c[4] + c[2] * c[3]) == FieldElement::one(q));
  CHECK(recover_subspace(s).size() == 4);
  CHECK_THROWS_AS(is_decomposable(PluckerVector{q, 4, 2, Vector(6, FieldElement::zero(q))}), eqf::Error);
}

TEST_CASE("recover examples") {
  auto q = make_field(0, {});
  auto b = recover_subspace(wedge(q, {unit(q, 3, 0), unit(q, 3, 1)}));
  REQUIRE(b.size() == 2);
  CHECK(b[0] == unit(q, 3, 0));
  CHECK(b[1] == unit(q, 3, 1));
  auto z = wedge(q, {vec(q, {1, 1, 0}), vec(q, {0, 1, 1})});
  auto r = recover_subspace(z);
  REQUIRE(r.size() == 2);
  CHECK(proportional(wedge(q, r), z));
  // both generators lie in the recovered span
  for (auto g : {vec(q, {1, 1, 0}), vec(q, {0, 1, 1})}) {
    auto rows = r;
    rows.push_back(g);
    CHECK(eqf::algebra::rank(eqf::algebra::Matrix::from_rows(q, rows, 3)) == 2);
  }
}

TEST_CASE("exhaustive decomposability over F_2 in dimension 4") {
  auto f = make_field(2, {});
  std::set<std::vector<int>> grass;
  auto bits = [&](int m) {
    Vector v;
    for (int i = 0; i < 4; ++i) v.push_back(FieldElement::from_int(f, (m >> i) & 1));
    return v;
  };
  auto key = [](const PluckerVector& z) {
    std::vector<int> k;
    for (const auto& c : z.coords) k.push_back(c.is_zero() ? 0 : 1);
    return k;
  };
  for (int a = 1; a < 16; ++a)
    for (int b = 1; b < 16; ++b) {
      if (a == b) continue;
      grass.insert(key(wedge(f, {bits(a), bits(b)})));
    }
  CHECK(grass.size() == 35);
  int count = 0;
  for (int m = 1; m < 64; ++m) {
    PluckerVector z{f, 4, 2, {}};
    std::vector<int> k;
    for (int i = 0; i < 6; ++i) {
      z.coords.push_back(FieldElement::from_int(f, (m >> i) & 1));
      k.push_back((m >> i) & 1);
    }
    bool dec = is_decomposable(z);
    CHECK(dec == (grass.count(k) == 1));
    count += dec;
  }
  CHECK(count == 35);
}

TEST_CASE("wedge recover roundtrip and homogeneity") {
  for (auto d : {make_field(3, {}), make_field(0, {})}) {
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<int> nd(2, 5), c(-4, 4);
    int done = 0;
    while (done < 100) {
      std::size_t n = static_cast<std::size_t>(nd(rng));
      std::size_t k = std::uniform_int_distribution<std::size_t>(1, std::min<std::size_t>(3, n))(rng);
      std::vector<Vector> vs;
      for (std::size_t i = 0; i < k; ++i) {
        Vector v;
        for (std::size_t j = 0; j < n; ++j) v.push_back(FieldElement::from_int(d, c(rng)));
        vs.push_back(v);
      }
      auto z = wedge(d, vs);
      if (z.is_zero()) continue;
      ++done;
      CHECK(is_decomposable(z));
      auto r = recover_subspace(z);
      CHECK(r.size() == k);
      CHECK(proportional(wedge(d, r), z));
      FieldElement s = FieldElement::from_int(d, 2);
      CHECK(is_decomposable(z.scaled(s)));
      for (const auto& eq : grassmannian_equations(n, k)) CHECK(eval_quadric(eq, z).is_zero());
    }
  }
}

TEST_CASE("grassmannian equations match the contraction test") {
  auto f = make_field(3, {});
  std::mt19937_64 rng(43);
  std::uniform_int_distribution<int> c(0, 2);
  auto eqs = grassmannian_equations(4, 2);
  for (int trial = 0; trial < 200; ++trial) {
    PluckerVector z{f, 4, 2, {}};
    for (int i = 0; i < 6; ++i) z.coords.push_back(FieldElement::from_int(f, c(rng)));
    if (z.is_zero()) continue;
    bool all = true;
    for (const auto& eq : eqs) all = all && eval_quadric(eq, z).is_zero();
    CHECK(all == is_decomposable(z));
  }
}
