#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "eqf/ir/formula.hpp"
#include "eqf/oracle/oracle.hpp"

namespace eqf::harness {

struct ChainOptions {
  int degree_bound = -1;  // -1: max(2 maxdeg, n(q-1) + maxdeg)
  int max_steps = 1000;
};

struct ChainStep {
  oracle::Point b;
  std::size_t span_dim = 0;   // dimension of the truncated ideal span
  std::size_t solutions = 0;  // exact count of common zeros so far
  std::uint64_t hash = 0;     // FNV-1a of the solution bitmap
  bool changed = false, exact_changed = false;
  bool span_matches_exact = false;
};

struct ChainReport {
  std::string id;
  std::string formula;
  std::string oracle;
  int degree_bound = 0;
  std::vector<ChainStep> steps;
  int stabilization_index = 0;  // last step at which the span changed (0: never)
  int exact_index = 0;
  int changes = 0;
  bool stabilized = false;
  bool indices_agree = false;
  bool consistent = false;  // every step's span matches the exact solution set
  nlohmann::json json() const;
};

// phi(x; y): a conjunction of polynomial equations, y the free variables whose
// name starts with 'y'. Only fp oracles (zero derivation, so delta-atoms of x
// vanish); throws Error("unsupported-shape") / Error("unsupported-oracle").
ChainReport chain_run(const ir::Formula& f, const std::string& id, const std::vector<oracle::Point>& params,
                      const oracle::Oracle& o, const ChainOptions& opt = {});

std::vector<oracle::Point> random_params(const ir::Formula& f, const oracle::Oracle& o, int steps, std::uint64_t seed);

}  // namespace eqf::harness
