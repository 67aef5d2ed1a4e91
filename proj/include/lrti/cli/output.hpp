#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace lrti::cli {

/// 17 significant digits, enough to round-trip any double.
std::string format_number(double value);

/// Writes to a sibling temporary file and renames it over `path`.
void write_atomic(const std::filesystem::path& path, std::string_view content);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns);

  CsvTable& cell(double value);
  CsvTable& cell(long long value);
  CsvTable& cell(int value) { return cell(static_cast<long long>(value)); }
  CsvTable& cell(std::string_view value);
  void end_row();

  const std::vector<std::string>& columns() const noexcept { return columns_; }
  std::size_t rows() const noexcept { return rows_; }
  std::string str() const;
  /// {"columns": [...], "rows": [[...], ...]}
  nlohmann::json json() const;

 private:
  void append(std::string_view text);

  std::vector<std::string> columns_;
  std::string body_;
  nlohmann::json rows_json_ = nlohmann::json::array();
  nlohmann::json row_json_ = nlohmann::json::array();
  std::size_t in_row_ = 0;
  std::size_t rows_ = 0;
};

}  // namespace lrti::cli
