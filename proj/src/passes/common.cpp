#include "eqf/passes/common.hpp"

#include "eqf/error.hpp"
#include "eqf/exterior/plucker.hpp"
#include "eqf/ir/shape.hpp"

namespace eqf::passes {

SymPoly sym_det(const SymMatrix& m, std::uint32_t p) {
  std::size_t n = m.size();
  if (n == 0) return SymPoly::constant(1, p);
  if (n == 1) return m[0][0];
  SymPoly acc(p);
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j].is_zero()) continue;
    SymMatrix minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<SymPoly> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(m[i][c]);
      minor.push_back(row);
    }
    SymPoly t = m[0][j] * sym_det(minor, p);
    acc = j % 2 ? acc - t : acc + t;
  }
  return acc;
}

SymMatrix sym_adjugate(const SymMatrix& m, std::uint32_t p) {
  std::size_t n = m.size();
  SymMatrix adj(n, std::vector<SymPoly>(n, SymPoly(p)));
  if (n == 1) {
    adj[0][0] = SymPoly::constant(1, p);
    return adj;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      SymMatrix minor;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == i) continue;
        std::vector<SymPoly> row;
        for (std::size_t c = 0; c < n; ++c)
          if (c != j) row.push_back(m[r][c]);
        minor.push_back(row);
      }
      SymPoly c = sym_det(minor, p);
      adj[j][i] = (i + j) % 2 ? -c : c;
    }
  return adj;
}

std::vector<SymPoly> sym_mul(const SymMatrix& m, const std::vector<SymPoly>& v, std::uint32_t p) {
  std::vector<SymPoly> out;
  for (const auto& row : m) {
    SymPoly s(p);
    for (std::size_t j = 0; j < row.size(); ++j) s += row[j] * v[j];
    out.push_back(s);
  }
  return out;
}

SymMatrix wronskian_matrix(const std::vector<SymPoly>& q) {
  std::size_t n = q.size();
  SymMatrix a(n);
  std::vector<SymPoly> cur = q;
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = cur;
    for (auto& c : cur) c = c.derive();
  }
  return a;
}

namespace {

bool has_any(const Term& t, const std::vector<ir::TermKind>& kinds) {
  for (auto k : kinds)
    if (ir::contains_kind(t, k)) return true;
  return false;
}

}  // namespace

std::optional<Term> innermost(const Term& t, const std::vector<ir::TermKind>& kinds) {
  for (const auto& a : t->args)
    if (auto r = innermost(a, kinds)) return r;
  for (auto k : kinds)
    if (t->kind == k) return t;
  return std::nullopt;
}

std::optional<Term> innermost(const Fml& f, const std::vector<ir::TermKind>& kinds) {
  for (const auto& t : f->terms)
    if (has_any(t, kinds)) return innermost(t, kinds);
  for (const auto& k : f->kids)
    if (auto r = innermost(k, kinds)) return r;
  return std::nullopt;
}

std::vector<std::vector<std::size_t>> k_subsets(std::size_t n, std::size_t k) {
  if (k > n) return {};
  return exterior::subsets(n, k);
}

Term canon(const Term& t, std::uint32_t p) { return ir::canonical(t, p); }
Fml canon(const Fml& f, std::uint32_t p) { return ir::canonicalize(f, p); }

SymPoly coefficient_poly(const algebra::FieldElement& c, std::uint32_t p, ir::NameSupply& supply,
                         std::vector<std::string>& names, oracle::Point& values) {
  long half = static_cast<long>(p / 2);
  for (long v = -half; v <= half; ++v)
    if (c == algebra::FieldElement::from_int(c.descriptor(), v)) return SymPoly::constant(v, p);
  std::string name = supply.fresh("b");
  names.push_back(name);
  values[name] = c;
  return SymPoly::variable(name, p);
}

void require_shape(const Formula& f, const std::string& kind) {
  auto s = ir::classify(f);
  if (s.kind != kind) throw Error("shape-violation", "expected " + kind + ", found " + s.kind);
}

}  // namespace eqf::passes
