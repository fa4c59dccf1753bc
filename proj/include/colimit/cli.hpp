#pragma once

// Command-line front end. Exit codes: 0 result computed, 1 malformed input,
// 2 a formula hypothesis failed, 3 a budget or enumeration limit was hit.

#include <ostream>

namespace colimit {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitHypothesis = 2;
constexpr int kExitBudget = 3;

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace colimit
