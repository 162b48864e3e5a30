#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pfk::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitAssertion = 1;
inline constexpr int kExitInput = 2;

/// Runs the command line (args excludes the program name). Results go to
/// `out`; failures produce one "pfk: error: <Code>: <message>" line on `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses a decimal exponent; p < 1 is rejected.
double parse_exponent(const std::string& text);
std::vector<double> parse_exponent_list(const std::string& text);

}  // namespace pfk::cli
