#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace modelspec::cli {

enum ExitCode : int {
    kOk = 0,
    kInvalidInput = 1,
    kNumericalFailure = 2,
    kPropertyViolation = 3,
};

/// Runs one command line (without the program name). Primary output goes to
/// `out` unless --out names a file; diagnostics and errors go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses "2.5", "-1", "pi", "pi/2", "5pi/12", "3*pi/4".
double parse_quantity(std::string_view text);

/// Ten significant digits, the CSV number format.
std::string format_number(double v);

} // namespace modelspec::cli
