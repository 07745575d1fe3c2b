#include "fracspec/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace fracspec {

std::string format_number(double v) {
  if (std::isnan(v)) return {};
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_csv(const std::filesystem::path& path, const CsvTable& table, const std::string& stamp) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  if (!stamp.empty()) out << "# " << stamp << '\n';
  for (std::size_t i = 0; i < table.header.size(); ++i) out << (i ? "," : "") << table.header[i];
  out << '\n';
  for (const auto& row : table.rows) {
    if (row.size() != table.header.size())
      throw std::logic_error("csv row width does not match header in " + table.name);
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i]);
    out << '\n';
  }
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace fracspec
