#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace eqf::harness {

// exit codes: 0 success, 1 findings (disagreement, shape violation, chain
// violation), 2 usage or input error
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace eqf::harness
