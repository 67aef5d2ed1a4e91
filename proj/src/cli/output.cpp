#include "lrti/cli/output.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <system_error>

#include "lrti/error.hpp"

namespace lrti::cli {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) value = 0.0;  // drop the sign of negative zero
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_atomic(const std::filesystem::path& path, std::string_view content) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::invalid_argument, "cannot open " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw Error(ErrorKind::invalid_argument, "failed writing " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error(ErrorKind::invalid_argument, "cannot rename onto " + path.string());
  }
}

CsvTable::CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

CsvTable& CsvTable::cell(double value) {
  append(format_number(value));
  row_json_.push_back(value);
  return *this;
}

CsvTable& CsvTable::cell(long long value) {
  append(std::to_string(value));
  row_json_.push_back(value);
  return *this;
}

CsvTable& CsvTable::cell(std::string_view value) {
  append(value);
  row_json_.push_back(std::string(value));
  return *this;
}

void CsvTable::append(std::string_view text) {
  if (in_row_ == columns_.size()) throw std::logic_error("csv row has too many cells");
  if (in_row_ > 0) body_ += ',';
  body_ += text;
  ++in_row_;
}

void CsvTable::end_row() {
  if (in_row_ != columns_.size()) throw std::logic_error("csv row has too few cells");
  body_ += '\n';
  rows_json_.push_back(std::move(row_json_));
  row_json_ = nlohmann::json::array();
  in_row_ = 0;
  ++rows_;
}

std::string CsvTable::str() const {
  std::string header;
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (i > 0) header += ',';
    header += columns_[i];
  }
  return header + '\n' + body_;
}

nlohmann::json CsvTable::json() const {
  return {{"columns", columns_}, {"rows", rows_json_}};
}

}  // namespace lrti::cli
