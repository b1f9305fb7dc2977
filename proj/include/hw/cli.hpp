#pragma once

// Command-line front end. Each subcommand drives one library module and writes
// CSV (header row, %.17g numbers) or JSON (fixed key order).

#include <ostream>

namespace hw::cli {

/// Runs the tool on argv; returns the process exit status. Errors are reported on
/// `err` as a single line "error: <code>: <message>".
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hw::cli
