#ifndef VOI_DATA_TABLE_HPP_
#define VOI_DATA_TABLE_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "voi/error.hpp"
#include "voi/window.hpp"

namespace voi {

// Rectangular numeric table with a metadata object. Values are in nats
// wherever a column name ends in _nats.
class DataTable {
public:
  explicit DataTable(std::vector<std::string> columns)
      : columns_(std::move(columns)) {
    detail::require(!columns_.empty(), "DataTable: no columns");
  }

  void add_row(std::vector<double> row) {
    detail::require(row.size() == columns_.size(),
                    "DataTable: row width does not match the header");
    rows_.push_back(std::move(row));
  }

  const std::vector<std::string> &columns() const noexcept { return columns_; }
  const std::vector<std::vector<double>> &rows() const noexcept {
    return rows_;
  }
  std::size_t size() const noexcept { return rows_.size(); }

  std::size_t column_index(std::string_view name) const {
    const auto it = std::find(columns_.begin(), columns_.end(), name);
    detail::require(it != columns_.end(),
                    "DataTable: no column named " + std::string(name));
    return static_cast<std::size_t>(it - columns_.begin());
  }

  std::vector<double> column(std::string_view name) const {
    const auto idx = column_index(name);
    std::vector<double> out;
    out.reserve(rows_.size());
    for (const auto &row : rows_) {
      out.push_back(row[idx]);
    }
    return out;
  }

  double at(std::size_t row, std::string_view name) const {
    return rows_.at(row)[column_index(name)];
  }

  nlohmann::json meta = nlohmann::json::object();

private:
  std::vector<std::string> columns_;
  std::vector<std::vector<double>> rows_;
};

namespace detail {

inline std::string csv_quote(const std::string &field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) {
    return field;
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') {
      out += '"';
    }
    out += c;
  }
  out += '"';
  return out;
}

} // namespace detail

/*
 * CSV output: one "# meta: {...}" comment line carrying the metadata as
 * compact JSON, then the header row, then the data. Numbers use the
 * shortest round-trip form with '.' as decimal separator.
 */
inline void write_csv(std::ostream &os, const DataTable &table) {
  os << "# meta: " << table.meta.dump() << '\n';
  const auto &cols = table.columns();
  for (std::size_t i = 0; i < cols.size(); ++i) {
    os << (i ? "," : "") << detail::csv_quote(cols[i]);
  }
  os << '\n';
  for (const auto &row : table.rows()) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      os << (i ? "," : "") << detail::format_double(row[i]);
    }
    os << '\n';
  }
}

// {"meta": {...}, "rows": [{column: value, ...}, ...]}; NaN becomes null.
inline nlohmann::json to_json(const DataTable &table) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto &row : table.rows()) {
    nlohmann::json record = nlohmann::json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (std::isfinite(row[i])) {
        record[table.columns()[i]] = row[i];
      } else {
        record[table.columns()[i]] = nullptr;
      }
    }
    rows.push_back(std::move(record));
  }
  return {{"meta", table.meta}, {"rows", std::move(rows)}};
}

inline void write_json(std::ostream &os, const DataTable &table) {
  os << to_json(table).dump(2) << '\n';
}

// 64-bit FNV-1a, hex encoded.
inline std::string fnv1a_hex(std::string_view data) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

} // namespace voi

#endif // VOI_DATA_TABLE_HPP_
