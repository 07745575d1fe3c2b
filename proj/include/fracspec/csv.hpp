#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace fracspec {

/// A named numeric table. NaN cells are written as empty fields.
struct CsvTable {
  std::string name;  // file stem
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

/// Formats a double with 17 significant digits ("nan" cells become "").
std::string format_number(double v);

/// Writes `# <stamp>` (if non-empty), the header line, then the rows.
void write_csv(const std::filesystem::path& path, const CsvTable& table, const std::string& stamp);

}  // namespace fracspec
