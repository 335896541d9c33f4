#pragma once

#include <string>
#include <vector>

namespace wmlab::cli {

// Entry point shared by the wmlab binary and the in-process tests.
// args excludes the program name. Exit codes: 0 pass/ok, 1 checked-and-
// failed, 2 invalid input or inapplicable.
int run(const std::vector<std::string>& args);

}  // namespace wmlab::cli
