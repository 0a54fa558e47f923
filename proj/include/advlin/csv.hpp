// Minimal CSV output: RFC-4180 quoting and round-trip-safe number formatting.
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace advlin {

// 17 significant digits: parses back to the identical double.
std::string fmt17(double v);

// Quotes the field if it contains a comma, quote, or newline.
std::string csv_escape(const std::string& field);

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);

}  // namespace advlin
