#pragma once

#include <string>
#include <vector>

namespace fsorail::csv {

// Render a double with 9 significant digits (shortest form). Values
// round-trip through parsing to within half an ULP of the 9th digit.
std::string format_double(double value);

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string to_string() const;
};

// Write content to path atomically: a temp file in the same directory is
// renamed over the target, so readers never observe a partial file.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace fsorail::csv
