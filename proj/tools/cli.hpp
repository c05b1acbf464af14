//! @file cli.hpp
//! @brief The groundbound command-line front end, callable in-process.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace groundbound::cli {

enum ExitCode : int {
    kSuccess = 0,
    kUsage = 2,
    kUnbounded = 3,
    kNumerical = 4,
};

//! Runs one invocation; `args` excludes the program name. Documents go to
//! `out` unless --out names a file (written atomically); diagnostics go to `err`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

//! Formats a double for CSV/JSON text: shortest round-trip form, "+inf",
//! "-inf" or "nan".
std::string format_number(double v);

//! RFC 4180 quoting when the field contains a comma, quote or line break.
std::string csv_field(const std::string &s);

} // namespace groundbound::cli
