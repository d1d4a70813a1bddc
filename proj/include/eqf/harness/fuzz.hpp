#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "eqf/harness/registry.hpp"

namespace eqf::harness {

inline constexpr const char* kSchema = "eqfields-report-v1";

struct CorpusEntry {
  std::string id;
  ir::Formula formula;
};

// every *.eqf file under dir, sorted by file name; id is the stem
std::vector<CorpusEntry> load_corpus(const std::string& dir);
CorpusEntry load_entry(const std::string& path);

struct FuzzOptions {
  int trials = 500;
  // extra points with the homogenization pivot pinned to zero (hom passes only)
  int forced = 100;
  std::uint64_t seed = 42;
  unsigned threads = 1;
  int max_reported = 3;  // disagreements listed per formula
  bool shrink = true;
  PassOptions pass;
};

struct FuzzSummary {
  std::size_t formulas = 0, checked = 0, forced_checked = 0;
  std::size_t disagreements = 0, shape_violations = 0, errors = 0;
  bool clean() const { return disagreements == 0 && shape_violations == 0 && errors == 0; }
};

// One report per pass; the corpus oracle is `o` unless it is empty, in
// which case each formula uses default_oracle.
nlohmann::json fuzz_equivalence(const std::string& pass, const std::vector<CorpusEntry>& corpus,
                                const oracle::Oracle* o, const FuzzOptions& opt, FuzzSummary* summary = nullptr);

std::uint64_t fnv1a(const std::string& s);
// canonical text of a report: sorted keys, two-space indent, trailing newline
std::string report_text(const nlohmann::json& j);

}  // namespace eqf::harness
