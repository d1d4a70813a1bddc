#include "eqf/harness/chain.hpp"

#include "eqf/error.hpp"
#include "eqf/harness/fuzz.hpp"
#include "eqf/ir/shape.hpp"
#include "eqf/ir/sympoly.hpp"

namespace eqf::harness {

using namespace eqf::ir;
using oracle::Oracle;
using oracle::Point;

namespace {

using Row = std::vector<std::int64_t>;

std::int64_t modpow(std::int64_t a, std::int64_t e, std::int64_t p) {
  std::int64_t r = 1;
  a %= p;
  for (; e > 0; e >>= 1, a = a * a % p)
    if (e & 1) r = r * a % p;
  return r;
}

std::int64_t residue(const oracle::FieldElement& v) {
  auto s = v.num().constant_value() * v.den().constant_value().inverse();
  return s.residue();
}

// echelon basis of a subspace of F_p^M
struct Echelon {
  std::int64_t p;
  std::vector<Row> rows;
  std::vector<int> pivot;
  Echelon(std::int64_t p_, std::size_t m) : p(p_), pivot(m, -1) {}
  bool insert(Row r) {
    for (std::size_t c = 0; c < r.size(); ++c) {
      if (r[c] == 0) continue;
      if (pivot[c] >= 0) {
        const Row& b = rows[static_cast<std::size_t>(pivot[c])];
        std::int64_t f = r[c];
        for (std::size_t k = c; k < r.size(); ++k) r[k] = ((r[k] - f * b[k]) % p + p) % p;
        continue;
      }
      std::int64_t inv = modpow(r[c], p - 2, p);
      for (auto& x : r) x = x * inv % p;
      pivot[c] = static_cast<int>(rows.size());
      rows.push_back(std::move(r));
      return true;
    }
    return false;
  }
};

struct Candidate {
  std::vector<std::string> xs, ys;
  // per equation: x-monomial (order-0 exponents) -> coefficient in y
  std::vector<std::vector<std::pair<std::vector<unsigned>, SymPoly>>> eqs;
  unsigned maxdeg = 0;
};

void collect_eqs(const Fml& f, std::vector<Term>& out) {
  if (f->kind == FKind::Eq0) out.push_back(f->terms[0]);
  if (f->kind == FKind::And)
    for (const auto& k : f->kids) collect_eqs(k, out);
}

Candidate analyse(const Formula& f) {
  if (!is_polynomial_system(f.root, true))
    throw Error("unsupported-shape", "chain candidates are conjunctions of polynomial equations");
  Candidate s;
  std::set<std::string> fv;
  free_vars(f.root, fv);
  for (const auto& v : fv) (v[0] == 'y' ? s.ys : s.xs).push_back(v);
  std::set<std::string> xset(s.xs.begin(), s.xs.end());
  std::vector<Term> ts;
  collect_eqs(f.root, ts);
  for (const auto& t : ts) {
    SymPoly sp = to_sympoly(t, f.p);
    std::vector<std::pair<std::vector<unsigned>, SymPoly>> eq;
    for (const auto& [m, c] : sp.coefficients_by([&](const Atom& a) { return !a.opaque && xset.count(a.name); })) {
      std::vector<unsigned> e(s.xs.size(), 0);
      bool derived = false;
      for (const auto& [a, k] : m) {
        // zero derivation: delta of an x-value is 0
        if (a.order > 0) derived = true;
        e[static_cast<std::size_t>(std::find(s.xs.begin(), s.xs.end(), a.name) - s.xs.begin())] = k;
      }
      if (derived) continue;
      s.maxdeg = std::max(s.maxdeg, mono_degree(m));
      eq.emplace_back(e, c);
    }
    s.eqs.push_back(std::move(eq));
  }
  return s;
}

}  // namespace

nlohmann::json ChainReport::json() const {
  nlohmann::json st = nlohmann::json::array();
  for (const auto& s : steps)
    st.push_back({{"b", oracle::point_json(s.b)},
                  {"span_dim", s.span_dim},
                  {"solutions", s.solutions},
                  {"hash", s.hash},
                  {"changed", s.changed},
                  {"exact_changed", s.exact_changed},
                  {"span_matches_exact", s.span_matches_exact}});
  return {{"schema", kSchema},
          {"kind", "chain"},
          {"id", id},
          {"formula", formula},
          {"oracle", oracle},
          {"degree_bound", degree_bound},
          {"steps", st},
          {"stabilization_index", stabilization_index},
          {"exact_index", exact_index},
          {"changes", changes},
          {"stabilized", stabilized},
          {"indices_agree", indices_agree},
          {"consistent", consistent}};
}

std::vector<Point> random_params(const Formula& f, const Oracle& o, int steps, std::uint64_t seed) {
  std::set<std::string> fv;
  free_vars(f.root, fv);
  oracle::Sampler sm(o, seed);
  std::vector<Point> out;
  for (int i = 0; i < steps; ++i) {
    Point b;
    for (const auto& v : fv)
      if (v[0] == 'y') b[v] = sm.element();
    out.push_back(b);
  }
  return out;
}

ChainReport chain_run(const Formula& f, const std::string& id, const std::vector<Point>& params, const Oracle& o,
                      const ChainOptions& opt) {
  if (o.kind != oracle::OracleKind::Fp) throw Error("unsupported-oracle", "chains need an fp oracle");
  o.check_accepts(f);
  Candidate sh = analyse(f);
  const std::int64_t q = o.p;
  const std::size_t n = sh.xs.size();
  std::size_t M = 1;
  for (std::size_t i = 0; i < n; ++i) {
    M *= static_cast<std::size_t>(q);
    if (M > 10000) throw Error("unsupported-shape", "solution set too large to enumerate");
  }
  ChainReport rep;
  rep.id = id;
  rep.formula = print(f.root);
  rep.oracle = o.spec();
  int D = opt.degree_bound >= 0
              ? opt.degree_bound
              : static_cast<int>(std::max(2 * sh.maxdeg, static_cast<unsigned>(n * (q - 1)) + sh.maxdeg));
  rep.degree_bound = D;

  auto reduce = [&](unsigned e) -> unsigned { return e == 0 ? 0 : (e - 1) % (q - 1) + 1; };
  auto digits = [&](std::size_t idx) {
    std::vector<unsigned> e(n);
    for (std::size_t i = 0; i < n; ++i, idx /= static_cast<std::size_t>(q)) e[i] = idx % q;
    return e;
  };
  auto index_of = [&](const std::vector<unsigned>& e) {
    std::size_t idx = 0;
    for (std::size_t i = n; i-- > 0;) idx = idx * static_cast<std::size_t>(q) + e[i];
    return idx;
  };
  // monomial values at every point of F_q^n
  std::vector<Row> mono_at(M, Row(M));
  for (std::size_t pt = 0; pt < M; ++pt) {
    auto x = digits(pt);
    for (std::size_t m = 0; m < M; ++m) {
      auto e = digits(m);
      std::int64_t v = 1;
      for (std::size_t i = 0; i < n; ++i) v = v * modpow(x[i], e[i], q) % q;
      mono_at[pt][m] = v;
    }
  }

  Echelon span(q, M);
  std::vector<bool> alive(M, true);
  std::size_t count = M;
  oracle::Evaluator ev(o);
  for (const auto& b : params) {
    if (static_cast<int>(rep.steps.size()) >= opt.max_steps) break;
    ChainStep st;
    st.b = b;
    bool grew = false;
    for (const auto& eq : sh.eqs) {
      std::map<std::vector<unsigned>, std::int64_t> g;
      unsigned dg = 0;
      for (const auto& [e, c] : eq) {
        std::int64_t v = residue(ev.sympoly(c, b));
        if (v == 0) continue;
        unsigned d = 0;
        for (auto k : e) d += k;
        dg = std::max(dg, d);
        g[e] = (g[e] + v) % q;
      }
      if (g.empty()) continue;
      for (std::size_t m = 0; m < M; ++m) {
        auto em = digits(m);
        unsigned dm = 0;
        for (auto k : em) dm += k;
        if (static_cast<int>(dm + dg) > D) continue;
        Row r(M, 0);
        for (const auto& [e, c] : g) {
          std::vector<unsigned> s(n);
          for (std::size_t i = 0; i < n; ++i) s[i] = reduce(e[i] + em[i]);
          auto& slot = r[index_of(s)];
          slot = (slot + c) % q;
        }
        grew = span.insert(std::move(r)) || grew;
      }
    }
    st.changed = grew;
    // exact route: evaluate the formula itself at every surviving point
    for (std::size_t pt = 0; pt < M; ++pt) {
      if (!alive[pt]) continue;
      Point full = b;
      auto x = digits(pt);
      for (std::size_t i = 0; i < n; ++i)
        full[sh.xs[i]] = oracle::FieldElement::from_scalar(o.field, algebra::Scalar::from_int(x[i], o.p));
      if (!ev.formula(f.root, full)) {
        alive[pt] = false;
        --count;
        st.exact_changed = true;
      }
    }
    std::string bits;
    for (bool a : alive) bits += a ? '1' : '0';
    st.hash = fnv1a(bits);
    st.solutions = count;
    st.span_dim = span.rows.size();
    bool match = span.rows.size() == M - count;
    for (std::size_t pt = 0; pt < M && match; ++pt) {
      if (!alive[pt]) continue;
      for (const auto& r : span.rows) {
        std::int64_t v = 0;
        for (std::size_t m = 0; m < M; ++m) v = (v + r[m] * mono_at[pt][m]) % q;
        if (v != 0) {
          match = false;
          break;
        }
      }
    }
    st.span_matches_exact = match;
    rep.steps.push_back(st);
    int k = static_cast<int>(rep.steps.size());
    if (st.changed) {
      rep.stabilization_index = k;
      ++rep.changes;
    }
    if (st.exact_changed) rep.exact_index = k;
  }
  rep.stabilized = static_cast<int>(rep.steps.size()) > rep.stabilization_index;
  rep.indices_agree = rep.stabilization_index == rep.exact_index;
  rep.consistent = true;
  for (const auto& s : rep.steps) rep.consistent = rep.consistent && s.span_matches_exact;
  return rep;
}

}  // namespace eqf::harness
