#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace cttstylo::csv {

// RFC 4180 quoting: fields containing ',', '"', CR or LF are quoted.
std::string escape(std::string_view field);
void write_row(std::ostream& out, const std::vector<std::string>& fields);

// Reads one record; returns false at end of input. Quoted fields may span lines.
bool read_row(std::istream& in, std::vector<std::string>& fields);

}  // namespace cttstylo::csv
