#pragma once

#include <iosfwd>

namespace mpg::cli {

/// Runs one CLI invocation. Reports go to `out` as a single JSON document;
/// errors go to `err` as {"error": {"kind", "detail"}}. Exit codes:
/// 0 = computed (including negative verdicts), 1 = input or usage errors,
/// 2 = guard violations.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mpg::cli
