#include "eqf/harness/cli.hpp"

#include <fstream>
#include <sstream>

#include "CLI11.hpp"

#include "eqf/error.hpp"
#include "eqf/harness/chain.hpp"
#include "eqf/harness/fuzz.hpp"
#include "eqf/ir/shape.hpp"
#include "eqf/passes/pairs.hpp"

namespace eqf::harness {

using nlohmann::json;
using oracle::Oracle;

namespace {

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("io-error", "cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error("syntax-error", path + ": " + e.what());
  }
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw Error("io-error", "cannot write " + path);
  f << text;
}

Oracle oracle_for(const std::string& spec, const ir::Formula& f) {
  return spec.empty() ? default_oracle(f) : Oracle::parse(spec);
}

json vec_json(const algebra::Vector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.to_string());
  return a;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"rewriting passes, oracle checks and chain experiments", "eqfields"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  std::string pass, in, outp, orc, params, point, corpus, formula;
  std::uint64_t seed = 42;
  int trials = 500, forced = 100, degree = -1, random_steps = 0, n = 6;
  unsigned threads = 1;
  bool no_shrink = false;

  auto* rw = app.add_subcommand("rewrite", "apply one pass to a formula file");
  rw->add_option("--pass", pass, "pass name")->required();
  rw->add_option("--in,input", in, "input .eqf")->required();
  rw->add_option("--out", outp, "output .eqf (default stdout)");
  rw->add_option("--oracle", orc, "oracle for passes that need one");
  rw->add_option("--params", params, "JSON point with instance values (reduce passes)");
  rw->add_option("--degree", degree, "linearize degree");
  rw->add_option("--seed", seed);

  auto* evs = app.add_subcommand("eval", "truth value of a formula at a point");
  evs->add_option("--oracle", orc)->required();
  evs->add_option("--formula", formula)->required();
  evs->add_option("--point", point)->required();

  auto* fz = app.add_subcommand("fuzz", "oracle equivalence of a pass over a corpus");
  fz->add_option("--pass", pass)->required();
  fz->add_option("--corpus", corpus, "directory of .eqf files or one file")->required();
  fz->add_option("--oracle", orc, "oracle (default: by language tag)");
  fz->add_option("--trials", trials);
  fz->add_option("--forced", forced, "pivot-zero points for the homogenization passes");
  fz->add_option("--seed", seed);
  fz->add_option("--threads", threads);
  fz->add_option("--out", outp, "report path (default stdout)");
  fz->add_flag("--no-shrink", no_shrink);

  auto* ch = app.add_subcommand("chain", "descending chain of instance intersections");
  ch->add_option("--formula", formula)->required();
  ch->add_option("--oracle", orc)->required();
  auto* po = ch->add_option("--params", params, "JSON array of parameter points");
  ch->add_option("--random", random_steps, "number of seeded random parameter points")->excludes(po);
  ch->add_option("--seed", seed);
  ch->add_option("--degree-bound", degree);
  ch->add_option("--out", outp);

  auto* an = app.add_subcommand("ann", "annihilator of a tuple over the constants");
  an->add_option("--point", point, "JSON point; the tuple is its values by name")->required();
  an->add_option("--n", n, "number of monomials");
  an->add_option("--oracle", orc);
  an->add_option("--out", outp);

  auto* cl = app.add_subcommand("classify", "shape of a formula");
  cl->add_option("input", in)->required();
  cl->add_option("--out", outp);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return 2;
  }

  try {
    if (*rw) {
      auto e = load_entry(in);
      Oracle o = oracle_for(orc, e.formula);
      PassOptions opt;
      opt.degree = degree;
      if (!params.empty()) opt.params = oracle::parse_point(o, read_json(params));
      auto pr = prepare(pass, e.formula, o, seed, opt);
      emit(print(pr.output), outp, out);
      if (!pr.shape_ok) {
        err << "shape check failed: " << pr.shape << "\n";
        return 1;
      }
      return 0;
    }
    if (*evs) {
      auto e = load_entry(formula);
      Oracle o = Oracle::parse(orc);
      auto pt = oracle::parse_point(o, read_json(point));
      bool v = oracle::eval(o, e.formula, pt, oracle::EvalOptions{o.kind == oracle::OracleKind::Pair});
      json j = {{"schema", kSchema}, {"kind", "eval"}, {"oracle", o.spec()}, {"formula", e.id}, {"value", v}};
      emit(report_text(j), outp, out);
      return 0;
    }
    if (*fz) {
      if (!is_pass(pass)) throw Error("usage-error", "unknown pass " + pass);
      auto c = load_corpus(corpus);
      std::optional<Oracle> o;
      if (!orc.empty()) o = Oracle::parse(orc);
      FuzzOptions opt;
      opt.trials = trials;
      opt.forced = forced;
      opt.seed = seed;
      opt.threads = threads;
      opt.shrink = !no_shrink;
      FuzzSummary s;
      auto rep = fuzz_equivalence(pass, c, o ? &*o : nullptr, opt, &s);
      emit(report_text(rep), outp, out);
      return s.clean() ? 0 : 1;
    }
    if (*ch) {
      auto e = load_entry(formula);
      Oracle o = Oracle::parse(orc);
      std::vector<oracle::Point> bs;
      if (!params.empty()) {
        json a = read_json(params);
        if (!a.is_array()) throw Error("usage-error", "--params needs a JSON array");
        for (const auto& p : a) bs.push_back(oracle::parse_point(o, p));
      } else {
        bs = random_params(e.formula, o, random_steps > 0 ? random_steps : 20, seed);
      }
      ChainOptions opt;
      opt.degree_bound = degree;
      auto rep = chain_run(e.formula, e.id, bs, o, opt);
      emit(report_text(rep.json()), outp, out);
      return rep.stabilized && rep.indices_agree && rep.consistent ? 0 : 1;
    }
    if (*an) {
      Oracle o = orc.empty() ? Oracle::pair(1) : Oracle::parse(orc);
      auto pt = oracle::parse_point(o, read_json(point));
      std::vector<algebra::FieldElement> a;
      for (const auto& [_, v] : pt) a.push_back(v);
      auto res = passes::annihilator(o, a, static_cast<std::size_t>(n));
      json basis = json::array();
      for (const auto& v : res.basis) basis.push_back(vec_json(v));
      json j = {{"schema", kSchema}, {"kind", "ann"}, {"oracle", o.spec()}, {"n", n}, {"dim", res.dim},
                {"basis", basis}};
      j["plucker"] = res.plucker ? vec_json(res.plucker->coords) : json();
      emit(report_text(j), outp, out);
      return 0;
    }
    if (*cl) {
      auto e = load_entry(in);
      json j = ir::classify(e.formula).json();
      emit(j.dump() + "\n", outp, out);
      return 0;
    }
  } catch (const Error& e) {
    err << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace eqf::harness
