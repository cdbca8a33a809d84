#pragma once

#include <istream>
#include <ostream>
#include <string>

#include "forge/dataset.hpp"

namespace forge {

// Comma-separated, header row required, lines starting with '#' skipped.
// The label column is `label_column` when given, else a column named
// `class`, else the last column.
Dataset parse_csv(std::istream& in, const std::string& label_column = "");
Dataset parse_csv_file(const std::string& path, const std::string& label_column = "");

// Features then a trailing `class` column; values with 17 significant digits.
void write_csv(const Dataset& ds, std::ostream& out);

std::string format_double(double value);

}  // namespace forge
