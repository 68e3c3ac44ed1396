#pragma once

#include <string>
#include <vector>

namespace sped {

// Shortest round-trip decimal representation; locale independent.
std::string format_double(double value);

// Newline-delimited decimal reals; blank lines and '#' comments are skipped.
// Throws std::runtime_error naming the offending 1-based line on bad input.
std::vector<double> read_value_file(const std::string& path);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace sped
