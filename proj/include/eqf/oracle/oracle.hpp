#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"

#include "eqf/algebra/matrix.hpp"
#include "eqf/ir/formula.hpp"
#include "eqf/ir/sympoly.hpp"

namespace eqf::oracle {

using algebra::DescPtr;
using algebra::FieldElement;

// scf: F_p(t1..te) with the standard p-basis; dcf: F_p(t), d/dt;
// pair: Q(t1..tk), d/dt1, E = constants; fp: the prime field, zero derivation.
enum class OracleKind { Scf, Dcf, Pair, Fp };

struct Oracle {
  OracleKind kind = OracleKind::Scf;
  std::uint32_t p = 0;
  int e = 0;  // scf imperfection degree, pair transcendence degree
  DescPtr field;
  std::vector<algebra::Exps> basis;

  static Oracle scf(std::uint32_t p, int e);
  static Oracle dcf(std::uint32_t p);
  static Oracle pair(int k);
  static Oracle fp(std::uint32_t p);
  // "scf:p=2,e=1", "dcf:p=3", "pair:k=1", "fp:p=5"; throws Error("usage-error")
  static Oracle parse(const std::string& spec);
  std::string spec() const;
  // throws Error("language-mismatch")
  void check_accepts(const ir::Formula& f) const;
};

using Point = std::map<std::string, FieldElement>;

Point parse_point(const Oracle& o, const nlohmann::json& j);
nlohmann::json point_json(const Point& pt);
std::string point_text(const Point& pt);

struct EvalOptions {
  // decide existsP blocks that are not linear in zeta through the degree-D
  // slice of the ideal and its delta closure (D the Macaulay degree)
  bool linearize_nonlinear = false;
};

class Evaluator {
 public:
  explicit Evaluator(Oracle o, EvalOptions opt = {}) : o_(std::move(o)), opt_(opt) {}
  const Oracle& oracle() const { return o_; }

  FieldElement term(const ir::Term& t, const Point& pt) const;
  FieldElement sympoly(const ir::SymPoly& s, const Point& pt) const;
  bool formula(const ir::Fml& f, const Point& pt) const;

  // K^p linear algebra in the scf oracle
  algebra::Vector coordinates(const FieldElement& a) const;
  bool pdep(const std::vector<FieldElement>& a, int N) const;
  // generalized lambda: zeta with a0 = sum zeta_i^p a_i, or nullopt when undefined
  std::optional<algebra::Vector> lambda(const std::vector<FieldElement>& stacked, int N, int n) const;
  // pair oracle: E-linear algebra
  bool dep(const std::vector<FieldElement>& a) const;
  std::optional<algebra::Vector> lambda_p(const std::vector<FieldElement>& a) const;
  // s(a): the p-th root when delta(a) = 0, else 0
  FieldElement s_function(const FieldElement& a) const;

  // nontrivial constant zero of the zeta-homogeneous system at the given slice degree
  bool tame_slice(const std::vector<std::string>& zeta, const std::vector<ir::Term>& polys, const Point& pt,
                  int degree) const;

 private:
  Oracle o_;
  EvalOptions opt_;
  std::size_t constant_span_by_expansion(const std::vector<algebra::Vector>& rows, std::size_t n) const;
};

bool eval(const Oracle& o, const ir::Formula& f, const Point& pt, EvalOptions opt = {});

// Macaulay degree r(dmax-1)+1, at least max(dmax, 1)
int macaulay_degree(int r, int dmax);

// monomials of total degree d in r variables, lex order on exponent vectors (descending)
std::vector<std::vector<unsigned>> monomials_of_degree(int r, int d);

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index);

// Versioned sampling distribution "sampler-v1": numerators and denominators
// of total degree <= 3, coefficients drawn from {0, +-1, +-2, +-3}; with
// probability 1/4 a special value: 0, a small integer, a p-th power (char p)
// or a constant (char 0), or the previous sample times such a factor.
class Sampler {
 public:
  static constexpr const char* kVersion = "sampler-v1";
  Sampler(const Oracle& o, std::uint64_t seed) : o_(o), rng_(seed) {}
  FieldElement element();
  FieldElement generic();
  Point point(const std::set<std::string>& vars);
  std::uint64_t next() { return rng_(); }
  std::uint64_t below(std::uint64_t n) { return rng_() % n; }

 private:
  const Oracle& o_;
  std::mt19937_64 rng_;
  std::optional<FieldElement> prev_;
  algebra::Poly poly(int max_deg, bool constants_only);
  FieldElement constant();
};

}  // namespace eqf::oracle
