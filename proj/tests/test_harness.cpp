#include <filesystem>

#include "doctest.h"
#include "eqf/error.hpp"
#include "eqf/harness/chain.hpp"
#include "eqf/harness/fuzz.hpp"
#include "random_formula.hpp"

using namespace eqf;
using namespace eqf::ir;
using namespace eqf::harness;
using oracle::Oracle;
using oracle::Point;

namespace {

const std::string kGolden = EQF_GOLDEN_DIR;

CorpusEntry entry(const std::string& id, const std::string& text) { return {id, parse_formula(text)}; }

Point fp_point(const Oracle& o, std::initializer_list<std::pair<const char*, long>> kv) {
  Point pt;
  for (auto [k, v] : kv) pt[k] = oracle::FieldElement::from_int(o.field, v);
  return pt;
}

std::size_t formula_size(const std::string& s) { return s.size(); }

}  // namespace

TEST_CASE("pass registry") {
  auto names = pass_names();
  CHECK(names.size() == 14);
  CHECK(is_pass("lambda-hom"));
  CHECK_FALSE(is_pass("lambda-homs"));
  auto f = parse_formula(";; lang: scf  p: 2\n(eq0 (+ x y))\n");
  CHECK_THROWS_AS(prepare("nope", f, Oracle::scf(2, 1), 1), Error);
  CHECK_THROWS_AS(prepare("identity", f, Oracle::scf(3, 1), 1), Error);
  CHECK_THROWS_AS(prepare("delta-hom", parse_formula(";; lang: dcf  p: 3\n(eq0 (s x))\n"), Oracle::dcf(3), 1), Error);
  auto h = prepare("lambda-hom", f, Oracle::scf(2, 1), 1);
  CHECK(print(h.output.root) == "(eq0 (+ (* x (^ y0 2)) (* y y0)))");
  CHECK(h.vars == std::vector<std::string>{"x", "y", "y0"});
  CHECK(h.force_zero);
  // the pivot avoids names already in use
  auto g = parse_formula(";; lang: scf  p: 2\n(eq0 (+ x y y0))\n");
  CHECK(prepare("lambda-hom", g, Oracle::scf(2, 1), 1).info["pivot"] == "y0_0");
}

TEST_CASE("identity fuzz is clean and the canary is caught") {
  std::vector<CorpusEntry> c = {
      entry("a", ";; lang: scf  p: 3\n(eq0 (+ x (* y y)))\n"),
      entry("b", ";; lang: scf  p: 3\n(and (pdep 1 x) (eq0 (+ y 1)))\n"),
  };
  FuzzOptions opt;
  opt.trials = 200;
  FuzzSummary s;
  auto rep = fuzz_equivalence("identity", c, nullptr, opt, &s);
  CHECK(s.clean());
  CHECK(rep["schema"] == kSchema);
  CHECK(rep["checked"] == 400);
  auto bad = fuzz_equivalence("canary", c, nullptr, opt, &s);
  CHECK(s.disagreements > 0);
  for (const auto& f : bad["formulas"]) {
    REQUIRE(f["findings"].size() > 0);
    const auto& r = f["findings"][0]["reproducer"];
    auto small = parse_formula(r["formula"].get<std::string>());
    CHECK(formula_size(print(small.root)) <= formula_size(f["input"].get<std::string>()));
    // the reproducer replays
    auto pr = prepare("canary", small, Oracle::scf(3, 1), 0);
    auto pt = oracle::parse_point(Oracle::scf(3, 1), r["point"]);
    CHECK_FALSE(pr.check(pt).agrees());
  }
  // both conjuncts of b are kept apart by the shrinker: only the equation is bumped
  CHECK(bad["formulas"][1]["findings"][0]["reproducer"]["formula"] == ";; lang: scf  p: 3\n(eq0 (+ y 1))\n");
}

TEST_CASE("fuzz reports are deterministic") {
  auto c = load_corpus(kGolden + "/scf_tame");
  REQUIRE(c.size() >= 8);
  FuzzOptions opt;
  opt.trials = 60;
  opt.forced = 10;
  opt.seed = 9;
  std::string one = report_text(fuzz_equivalence("lambda-hom", c, nullptr, opt));
  opt.threads = 4;
  std::string par = report_text(fuzz_equivalence("lambda-hom", c, nullptr, opt));
  CHECK(one == par);
  opt.seed = 10;
  CHECK(one != report_text(fuzz_equivalence("lambda-hom", c, nullptr, opt)));
  auto j = nlohmann::json::parse(one);
  CHECK(j["forced_checked"] == 10 * c.size());
  CHECK(j["sampler"] == "sampler-v1");
}

TEST_CASE("every pass on its corpus, short run") {
  struct Suite {
    const char* pass;
    const char* dir;
    const char* oracle;
  };
  for (auto s : {Suite{"lambda-bk", "scf_term", ""}, Suite{"delta-bk", "dcf_term", ""},
                 Suite{"lambda-hom", "scf_tame", ""}, Suite{"delta-hom", "dcf_tame", ""},
                 Suite{"lambda-to-delta", "scf_tame", "scf:p=3,e=1"}, Suite{"s-form", "dcf_tame", ""},
                 Suite{"s-roundtrip", "dcf_tame", ""}, Suite{"scf-reduce", "scf_claim", ""},
                 Suite{"dcf-reduce", "dcf_claim", ""}, Suite{"lambdap-to-tame", "pair_lambdap", ""},
                 Suite{"linearize", "pair_tame", ""}}) {
    auto c = load_corpus(kGolden + "/" + s.dir);
    FuzzOptions opt;
    opt.trials = 20;
    opt.forced = 5;
    opt.threads = 4;
    FuzzSummary sum;
    std::optional<Oracle> o;
    if (*s.oracle) o = Oracle::parse(s.oracle);
    fuzz_equivalence(s.pass, c, o ? &*o : nullptr, opt, &sum);
    CHECK_MESSAGE(sum.clean(), s.pass);
    CHECK(sum.formulas == c.size());
  }
}

TEST_CASE("corpus layout") {
  std::size_t total = 0;
  for (const auto& d : std::filesystem::directory_iterator(kGolden)) {
    if (!d.is_directory() || d.path().filename() == "chain" || d.path().filename() == "cli") continue;
    auto c = load_corpus(d.path().string());
    total += c.size();
    for (const auto& e : c) CHECK(e.id.rfind(d.path().filename().string() + "_", 0) == 0);
  }
  CHECK(total >= 50);
  CHECK(load_corpus(kGolden + "/scf_term").size() >= 15);
  CHECK(load_corpus(kGolden + "/dcf_term").size() >= 15);
}

TEST_CASE("chain examples") {
  auto o = Oracle::fp(5);
  auto f = parse_formula(";; lang: scf  p: 5\n(eq0 (+ x (- y)))\n");
  auto r = chain_run(f, "x-y", {fp_point(o, {{"y", 1}}), fp_point(o, {{"y", 2}})}, o);
  REQUIRE(r.steps.size() == 2);
  CHECK(r.steps[0].span_dim == 4);
  CHECK(r.steps[0].solutions == 1);
  CHECK(r.steps[1].span_dim == 5);
  CHECK(r.steps[1].solutions == 0);
  CHECK(r.stabilization_index == 2);
  CHECK(r.exact_index == 2);
  CHECK(r.consistent);
  CHECK_FALSE(r.stabilized);
  std::vector<Point> same(6, fp_point(o, {{"y", 3}}));
  auto s = chain_run(f, "x-y", same, o);
  CHECK(s.stabilization_index == 1);
  CHECK(s.stabilized);
  CHECK_THROWS_AS(chain_run(f, "x-y", same, Oracle::dcf(5)), Error);
  auto pd = parse_formula(";; lang: scf  p: 5\n(pdep 1 x)\n");
  CHECK_THROWS_AS(chain_run(pd, "pd", same, o), Error);
  CHECK(r.json()["schema"] == kSchema);
}

TEST_CASE("linear chains are short") {
  auto o = Oracle::fp(5);
  auto f = parse_formula(";; lang: scf  p: 5\n(eq0 (+ (* y1 x1) (* y2 x2)))\n");
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto r = chain_run(f, "lin", random_params(f, o, 12, seed), o);
    CHECK(r.changes <= 3);
    CHECK(r.indices_agree);
    CHECK(r.consistent);
  }
}

TEST_CASE("span index equals the exact index on random candidates") {
  std::mt19937_64 rng(61);
  for (std::uint32_t p : {3u, 5u}) {
    auto o = Oracle::fp(p);
    testing::FormulaGen gen(rng, o);
    for (int k = 0; k < 25; ++k) {
      std::vector<std::string> vars = k % 2 ? std::vector<std::string>{"x1", "y1"}
                                            : std::vector<std::string>{"x1", "x2", "y1", "y2"};
      Fml body = k % 3 ? eq0(gen.poly(vars)) : f_and({eq0(gen.poly(vars)), eq0(gen.poly(vars))});
      Formula f{k % 4 == 0 ? Language::Dcf : Language::Scf, p, canonicalize(body, p)};
      auto r = chain_run(f, "rand", random_params(f, o, 20, static_cast<std::uint64_t>(k)), o);
      CHECK_MESSAGE(r.indices_agree, print(f.root));
      CHECK(r.consistent);
      for (std::size_t i = 1; i < r.steps.size(); ++i) CHECK(r.steps[i].solutions <= r.steps[i - 1].solutions);
    }
  }
}

TEST_CASE("differential atoms vanish in the zero-derivation chain") {
  auto o = Oracle::fp(5);
  auto f = parse_formula(";; lang: dcf  p: 5\n(eq0 (+ (d x) (* y x) (- y)))\n");
  auto r = chain_run(f, "dx", {fp_point(o, {{"y", 2}}), fp_point(o, {{"y", 3}})}, o);
  // y x - y = 0 means x = 1 for y != 0
  CHECK(r.steps[0].solutions == 1);
  CHECK(r.stabilization_index == 1);
  CHECK(r.indices_agree);
}
