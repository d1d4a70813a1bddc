#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "eqf/ir/formula.hpp"
#include "eqf/oracle/oracle.hpp"

namespace eqf::harness {

struct PassOptions {
  // instance values for the reduce passes (sampled from the seed when absent)
  std::optional<oracle::Point> params;
  // linearize slice degree; -1 picks the Macaulay degree
  int degree = -1;
};

struct Verdict {
  bool expected = false;
  bool got = false;
  bool agrees() const { return expected == got; }
};

// A pass applied to one formula, together with the check that its output
// means what the input meant.
struct Prepared {
  ir::Formula output;
  bool shape_ok = true;
  std::string shape;  // short description of the checked shape property
  nlohmann::json info = nlohmann::json::object();
  oracle::Oracle sample_oracle;   // points are drawn here
  std::vector<std::string> vars;  // ... over these variables
  std::function<Verdict(const oracle::Point&)> check;
  // set for the homogenization passes: pins the pivot to zero
  std::function<void(oracle::Point&)> force_zero;
};

std::vector<std::string> pass_names();
bool is_pass(const std::string& name);
// throws Error("usage-error") for unknown passes and whatever the pass throws
Prepared prepare(const std::string& pass, const ir::Formula& f, const oracle::Oracle& o, std::uint64_t seed,
                 const PassOptions& opt = {});

// the oracle a formula in this language is usually evaluated in
oracle::Oracle default_oracle(const ir::Formula& f);

}  // namespace eqf::harness
