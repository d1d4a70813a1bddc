#include "eqf/harness/fuzz.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "eqf/error.hpp"

namespace eqf::harness {

using namespace eqf::ir;
using oracle::Oracle;
using oracle::Point;
using oracle::Sampler;
using nlohmann::json;

namespace fs = std::filesystem;

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string report_text(const json& j) { return j.dump(2) + "\n"; }

CorpusEntry load_entry(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("io-error", "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return {fs::path(path).stem().string(), parse_formula(ss.str())};
}

std::vector<CorpusEntry> load_corpus(const std::string& dir) {
  if (!fs::is_directory(dir)) return {load_entry(dir)};
  std::vector<std::string> paths;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".eqf") paths.push_back(e.path().string());
  std::sort(paths.begin(), paths.end());
  std::vector<CorpusEntry> out;
  for (const auto& p : paths) out.push_back(load_entry(p));
  return out;
}

namespace {

// one-step shrinks: drop a conjunct/disjunct, keep a single one, or strip a negation
std::vector<Fml> shrinks(const Fml& f) {
  std::vector<Fml> out;
  if (f->kind == FKind::Not) out.push_back(f->kids[0]);
  if (f->kind == FKind::And || f->kind == FKind::Or) {
    auto rebuild = [&](std::vector<Fml> ks) { return f->kind == FKind::And ? f_and(ks) : f_or(ks); };
    for (std::size_t i = 0; i < f->kids.size(); ++i) out.push_back(f->kids[i]);
    if (f->kids.size() > 2)
      for (std::size_t i = 0; i < f->kids.size(); ++i) {
        auto ks = f->kids;
        ks.erase(ks.begin() + static_cast<long>(i));
        out.push_back(rebuild(ks));
      }
    for (std::size_t i = 0; i < f->kids.size(); ++i)
      for (const auto& s : shrinks(f->kids[i])) {
        auto ks = f->kids;
        ks[i] = s;
        out.push_back(rebuild(ks));
      }
  }
  return out;
}

struct Probe {
  const std::string& pass;
  const Oracle& o;
  std::uint64_t seed;
  const PassOptions& popt;
};

// the point restricted to (and completed on) the prepared variables
Point fit_point(const Prepared& pr, const Point& base, std::uint64_t seed, bool forced) {
  Sampler sm(pr.sample_oracle, seed);
  Point pt;
  for (const auto& v : pr.vars) pt[v] = base.count(v) ? base.at(v) : sm.element();
  if (forced && pr.force_zero) pr.force_zero(pt);
  return pt;
}

std::optional<Point> still_disagrees(const Probe& pb, const Formula& cand, const Point& base, bool forced) {
  try {
    validate(cand);
    Prepared pr = prepare(pb.pass, cand, pb.o, pb.seed, pb.popt);
    Point pt = fit_point(pr, base, oracle::trial_seed(pb.seed, 0xfffffffULL), forced);
    if (!pr.check(pt).agrees()) return pt;
  } catch (const std::exception&) {
  }
  return std::nullopt;
}

json shrink(const Probe& pb, const Formula& f, Point pt, bool forced) {
  Formula cur = f;
  for (int step = 0; step < 200; ++step) {
    bool moved = false;
    for (const auto& c : shrinks(cur.root)) {
      Formula cand{cur.lang, cur.p, c};
      if (auto q = still_disagrees(pb, cand, pt, forced)) {
        cur = cand;
        pt = *q;
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }
  return {{"formula", print(cur)}, {"point", oracle::point_json(pt)}};
}

struct Outcome {
  json entry;
  FuzzSummary s;
};

Outcome run_one(const std::string& pass, const CorpusEntry& e, const Oracle& o, const FuzzOptions& opt) {
  Outcome out;
  out.s.formulas = 1;
  json& j = out.entry;
  j["id"] = e.id;
  j["input"] = print(e.formula.root);
  j["oracle"] = o.spec();
  std::uint64_t fseed = oracle::trial_seed(opt.seed, fnv1a(e.id));
  Prepared pr;
  try {
    pr = prepare(pass, e.formula, o, fseed, opt.pass);
  } catch (const Error& err) {
    j["error"] = err.what();
    out.s.errors = 1;
    return out;
  }
  j["output"] = print(pr.output.root);
  j["shape"] = pr.shape;
  j["shape_ok"] = pr.shape_ok;
  j["info"] = pr.info;
  if (!pr.shape_ok) out.s.shape_violations = 1;
  json found = json::array();
  std::size_t disagree = 0, errors = 0;
  auto run = [&](std::uint64_t index, bool forced) {
    Point pt = fit_point(pr, {}, oracle::trial_seed(fseed, index), forced);
    try {
      Verdict v = pr.check(pt);
      if (v.agrees()) return;
      ++disagree;
      if (static_cast<int>(found.size()) >= opt.max_reported) return;
      json d = {{"trial", index}, {"forced_zero", forced}, {"point", oracle::point_json(pt)},
                {"expected", v.expected}, {"got", v.got}};
      if (opt.shrink) d["reproducer"] = shrink(Probe{pass, o, fseed, opt.pass}, e.formula, pt, forced);
      found.push_back(d);
    } catch (const Error& err) {
      ++errors;
      if (static_cast<int>(found.size()) < opt.max_reported)
        found.push_back({{"trial", index}, {"point", oracle::point_json(pt)}, {"error", err.what()}});
    }
  };
  for (int t = 0; t < opt.trials; ++t) run(static_cast<std::uint64_t>(t), false);
  int forced = pr.force_zero ? opt.forced : 0;
  for (int t = 0; t < forced; ++t) run(static_cast<std::uint64_t>(opt.trials + t), true);
  out.s.checked = static_cast<std::size_t>(opt.trials);
  out.s.forced_checked = static_cast<std::size_t>(forced);
  out.s.disagreements = disagree;
  out.s.errors += errors;
  j["checked"] = opt.trials;
  j["forced_checked"] = forced;
  j["disagreements"] = disagree;
  j["eval_errors"] = errors;
  j["findings"] = found;
  return out;
}

}  // namespace

json fuzz_equivalence(const std::string& pass, const std::vector<CorpusEntry>& corpus, const Oracle* o,
                      const FuzzOptions& opt, FuzzSummary* summary) {
  if (!is_pass(pass)) throw Error("usage-error", "unknown pass " + pass);
  std::vector<Outcome> results(corpus.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < corpus.size();) {
      Oracle oi = o ? *o : default_oracle(corpus[i].formula);
      results[i] = run_one(pass, corpus[i], oi, opt);
    }
  };
  unsigned n = std::max(1u, std::min<unsigned>(opt.threads, static_cast<unsigned>(corpus.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  FuzzSummary s;
  json formulas = json::array();
  for (auto& r : results) {
    s.formulas += r.s.formulas;
    s.checked += r.s.checked;
    s.forced_checked += r.s.forced_checked;
    s.disagreements += r.s.disagreements;
    s.shape_violations += r.s.shape_violations;
    s.errors += r.s.errors;
    formulas.push_back(std::move(r.entry));
  }
  if (summary) *summary = s;
  return {{"schema", kSchema},
          {"kind", "fuzz"},
          {"pass", pass},
          {"oracle", o ? o->spec() : "default"},
          {"seed", opt.seed},
          {"trials", opt.trials},
          {"forced", opt.forced},
          {"sampler", Sampler::kVersion},
          {"formulas", formulas},
          {"checked", s.checked},
          {"forced_checked", s.forced_checked},
          {"disagreements", s.disagreements},
          {"shape_violations", s.shape_violations},
          {"errors", s.errors}};
}

}  // namespace eqf::harness
