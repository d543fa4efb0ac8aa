#pragma once

// Locale-independent CSV assembly. Rows are built in memory and written in
// one go so output is identical regardless of how the numbers were produced.

#include <filesystem>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace shg {

// Shortest of fixed/scientific with 12 significant digits, '.' decimal
// point, and -0 printed as 0.
std::string format_number(double x, int significant = 12);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  const std::vector<std::string>& header() const { return header_; }
  std::size_t rows() const { return rows_.size(); }

  // Each cell is already formatted; the count must match the header.
  void add_row(std::vector<std::string> cells);

  std::string str() const;
  void write(const std::filesystem::path& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace shg
