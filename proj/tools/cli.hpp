#pragma once

#include <iosfwd>

namespace doxa::cli {

/// Exit codes: 0 success (or "true"), 1 a negative answer (validation
/// failure, "false", schema counterexamples, unmet precondition), 2 bad
/// input (arguments, file schema, formula syntax, unknown point).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace doxa::cli
