// Command-line front end: solve, reproduce, order-table, sweep.
// Exposed as a function over argument vectors so tests can drive it
// without spawning processes.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace secantk {

/// Runs the CLI. Returns the process exit code: 0 on success/convergence,
/// 2 when a run finished without converging (or a reproduction check
/// missed its tolerance), 1 on usage errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

} // namespace secantk
