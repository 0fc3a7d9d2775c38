#pragma once

// CSV and JSON serialization of sweep rows.
//
// CSV: header `q_repr,x,r,quantity,value,oracle_value,abs_diff,status`,
// RFC 4180 quoting, floats printed with 17 significant digits, null as an
// empty field. JSON: an array of objects with the same field names; null for
// absent values and for the infinite x of asymptote rows.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "stdq/errors.hpp"
#include "stdq/sweep.hpp"

namespace stdq {

inline constexpr const char* kCsvHeader = "q_repr,x,r,quantity,value,oracle_value,abs_diff,status";

namespace detail {

inline std::string format_float(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline std::string csv_optional(const std::optional<double>& v) { return v ? format_float(*v) : std::string(); }

/// Splits CSV text into records of fields (RFC 4180).
inline std::vector<std::vector<std::string>> parse_csv_records(const std::string& text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false;
  bool field_started = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      field_started = true;
    } else if (c == ',') {
      record.push_back(std::move(field));
      field.clear();
      field_started = true;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      record.push_back(std::move(field));
      field.clear();
      records.push_back(std::move(record));
      record.clear();
      field_started = false;
    } else {
      field += c;
      field_started = true;
    }
  }
  if (quoted) throw ConfigError("csv: unterminated quoted field");
  if (field_started || !field.empty() || !record.empty()) {
    record.push_back(std::move(field));
    records.push_back(std::move(record));
  }
  return records;
}

inline std::optional<double> parse_optional_double(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return parse_double(s);
}

inline nlohmann::ordered_json json_optional(const std::optional<double>& v) {
  if (!v || !std::isfinite(*v)) return nullptr;
  return *v;
}

inline std::optional<double> optional_from_json(const nlohmann::json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

}  // namespace detail

inline std::string to_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << kCsvHeader << "\n";
  for (const auto& row : rows) {
    os << detail::csv_field(row.q_repr) << ',' << detail::format_float(row.x) << ',' << row.r << ','
       << to_string(row.quantity) << ',' << detail::csv_optional(row.value) << ','
       << detail::csv_optional(row.oracle_value) << ',' << detail::csv_optional(row.abs_diff) << ','
       << to_string(row.status) << "\n";
  }
  return os.str();
}

inline std::vector<SweepRow> from_csv(const std::string& text) {
  const auto records = detail::parse_csv_records(text);
  if (records.empty()) throw ConfigError("csv: missing header");
  std::string header;
  for (std::size_t i = 0; i < records[0].size(); ++i) header += (i ? "," : "") + records[0][i];
  if (header != kCsvHeader) throw ConfigError("csv: unexpected header '" + header + "'");
  std::vector<SweepRow> rows;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& f = records[i];
    if (f.size() != 8) throw ConfigError("csv: record " + std::to_string(i) + " has " + std::to_string(f.size()) + " fields");
    SweepRow row;
    row.q_repr = f[0];
    row.x = detail::parse_double(f[1]);
    row.r = static_cast<int>(detail::parse_long(f[2]));
    row.quantity = parse_quantity(f[3]);
    row.value = detail::parse_optional_double(f[4]);
    row.oracle_value = detail::parse_optional_double(f[5]);
    row.abs_diff = detail::parse_optional_double(f[6]);
    row.status = parse_status(f[7]);
    rows.push_back(std::move(row));
  }
  return rows;
}

inline std::string to_json(const std::vector<SweepRow>& rows) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& row : rows) {
    arr.push_back(nlohmann::ordered_json{
        {"q_repr", row.q_repr},
        {"x", detail::json_optional(row.x)},
        {"r", row.r},
        {"quantity", to_string(row.quantity)},
        {"value", detail::json_optional(row.value)},
        {"oracle_value", detail::json_optional(row.oracle_value)},
        {"abs_diff", detail::json_optional(row.abs_diff)},
        {"status", to_string(row.status)},
    });
  }
  return arr.dump(2) + "\n";
}

inline std::vector<SweepRow> from_json(const std::string& text) {
  nlohmann::json arr;
  try {
    arr = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("json: ") + e.what());
  }
  if (!arr.is_array()) throw ConfigError("json: expected an array of rows");
  std::vector<SweepRow> rows;
  for (const auto& obj : arr) {
    SweepRow row;
    row.q_repr = obj.at("q_repr").get<std::string>();
    const auto& x = obj.at("x");
    row.x = x.is_null() ? std::numeric_limits<double>::infinity() : x.get<double>();
    row.r = obj.at("r").get<int>();
    row.quantity = parse_quantity(obj.at("quantity").get<std::string>());
    row.value = detail::optional_from_json(obj.at("value"));
    row.oracle_value = detail::optional_from_json(obj.at("oracle_value"));
    row.abs_diff = detail::optional_from_json(obj.at("abs_diff"));
    row.status = parse_status(obj.at("status").get<std::string>());
    rows.push_back(std::move(row));
  }
  return rows;
}

inline std::string format_rows(const std::vector<SweepRow>& rows, OutputFormat format) {
  return format == OutputFormat::csv ? to_csv(rows) : to_json(rows);
}

/// Writes rows to `destination`, or to standard output when it is empty.
inline void emit(const std::vector<SweepRow>& rows, OutputFormat format,
                 const std::optional<std::filesystem::path>& destination = std::nullopt) {
  const std::string text = format_rows(rows, format);
  if (!destination) {
    std::cout << text;
    std::cout.flush();
    if (!std::cout) throw IoError("failed writing to standard output");
    return;
  }
  std::ofstream out(*destination, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + destination->string() + "' for writing");
  out << text;
  out.close();
  if (!out) throw IoError("failed writing '" + destination->string() + "'");
}

}  // namespace stdq
