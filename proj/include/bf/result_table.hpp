#pragma once

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "bf/config.hpp"
#include "bf/error.hpp"
#include "bf/format.hpp"

namespace bf {

inline constexpr const char* version = "0.1.0";

using Cell = std::variant<std::int64_t, double, std::string>;

inline std::string format_cell(const Cell& c) {
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&c)) return format_sig(*d, 12);
  const auto& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

// Rectangular CSV table preceded by a one-line provenance comment.
class ResultTable {
 public:
  ResultTable(std::string experiment, std::vector<std::string> columns)
      : experiment_(std::move(experiment)), columns_(std::move(columns)) {}

  void add_row(std::vector<Cell> row) {
    if (row.size() != columns_.size()) {
      throw InvalidArgument(experiment_ + ": row has " + std::to_string(row.size()) + " cells, expected " +
                            std::to_string(columns_.size()));
    }
    rows_.push_back(std::move(row));
  }

  void set_provenance(const Config& cfg) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, cfg.hash());
    seed_ = cfg.has("seed") ? cfg.get_string("seed") : "none";
    config_hash_ = buf;
  }

  const std::string& experiment() const { return experiment_; }
  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const { return rows_; }

  std::size_t column(const std::string& name) const {
    for (std::size_t i = 0; i < columns_.size(); ++i)
      if (columns_[i] == name) return i;
    throw InvalidArgument(experiment_ + ": no column '" + name + "'");
  }

  void write_csv(std::ostream& out) const {
    out << "# experiment=" << experiment_ << " version=" << version << " seed=" << seed_ << " config=" << config_hash_ << '\n';
    for (std::size_t i = 0; i < columns_.size(); ++i) out << (i ? "," : "") << columns_[i];
    out << '\n';
    for (const auto& row : rows_) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_cell(row[i]);
      out << '\n';
    }
  }

  std::string to_csv() const {
    std::ostringstream out;
    write_csv(out);
    return out.str();
  }

 private:
  std::string experiment_;
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
  std::string seed_ = "none";
  std::string config_hash_ = "0000000000000000";
};

inline double as_double(const Cell& c) {
  if (const auto* i = std::get_if<std::int64_t>(&c)) return static_cast<double>(*i);
  if (const auto* d = std::get_if<double>(&c)) return *d;
  return std::numeric_limits<double>::quiet_NaN();
}

inline std::int64_t as_int(const Cell& c) {
  if (const auto* i = std::get_if<std::int64_t>(&c)) return *i;
  throw InvalidArgument("cell is not an integer");
}

inline std::string as_string(const Cell& c) {
  if (const auto* s = std::get_if<std::string>(&c)) return *s;
  return format_cell(c);
}

}  // namespace bf
