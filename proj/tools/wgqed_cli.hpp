#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace wgqed::cli {

inline constexpr const char* kGeneratedBy = "wgqed 0.1.0";

enum ExitCode : int {
    kOk = 0,
    kUsage = 2,
    kNumerical = 3,
    kInvariant = 4,
};

// "x", "a,b,c" or "start:stop:step" (inclusive of stop within step/1e6).
// An empty or all-blank string yields an empty list.
std::vector<double> parse_values(const std::string& text);

// %.12g, '.' decimal point regardless of locale
std::string fmt(double x);

// Runs one CLI invocation. Data goes to `out` unless --out names a file.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wgqed::cli
