#pragma once

#include <string>
#include <vector>

namespace sndgaze::csv {

// RFC-4180 field quoting: quotes fields containing comma, quote or newline.
std::string escape_field(const std::string& field);

// Parses one logical CSV record (no embedded newlines supported in input rows).
std::vector<std::string> parse_line(const std::string& line);

// Reads all records from a file; skips trailing empty line.
std::vector<std::vector<std::string>> read_file(const std::string& path);

std::string join_row(const std::vector<std::string>& fields);

// Full-precision decimal rendering that round-trips a double.
std::string format_double(double v);

}  // namespace sndgaze::csv
