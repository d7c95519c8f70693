#pragma once

#include <ostream>

namespace hmf::cli {

// Runs the built-in property checks, one line per check. Returns the number of failures.
int run_selfcheck(std::ostream& out, bool quick);

} // namespace hmf::cli
