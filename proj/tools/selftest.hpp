#pragma once

#include <ostream>

namespace trackmetric::cli {

/// Recomputes the published tables from the built-in scenarios and prints one
/// PASS/FAIL line per table. Returns the number of failures.
int run_selftest(std::ostream& out);

}  // namespace trackmetric::cli
