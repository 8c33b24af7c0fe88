/* Copyright 2026 The copygrade Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

// Loading product corpora from CSV (RFC 4180) and JSONL, and writing them
// back in the toolkit's canonical column layout.

#ifndef COPYGRADE_INGEST_HPP_
#define COPYGRADE_INGEST_HPP_

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "copygrade/error.hpp"
#include "copygrade/lexicon.hpp"
#include "copygrade/metrics.hpp"
#include "copygrade/record.hpp"
#include "copygrade/utf8.hpp"

namespace copygrade {

enum class FileFormat { csv, jsonl };

inline std::string_view format_name(FileFormat f) {
  return f == FileFormat::csv ? "csv" : "jsonl";
}

inline FileFormat parse_format(std::string_view s) {
  if (s == "csv") return FileFormat::csv;
  if (s == "jsonl" || s == "ndjson") return FileFormat::jsonl;
  throw Error("unknown format \"" + std::string(s) + "\" (expected csv or jsonl)");
}

inline FileFormat format_from_path(const std::filesystem::path& p) {
  auto ext = p.extension().string();
  for (auto& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (ext == ".csv") return FileFormat::csv;
  if (ext == ".jsonl" || ext == ".ndjson") return FileFormat::jsonl;
  throw Error("cannot infer format of " + p.string() +
              "; pass --format csv|jsonl");
}

// Which source column feeds each ProductRecord field.
struct ColumnMapping {
  std::string product_name;
  std::string product_category;
  std::string about_product;
  std::string description;
  // Optional: when the column is absent, every record gets
  // default_source_label.
  std::string source_label = "source_label";
  std::string default_source_label = kHumanSourceLabel;

  // Column names of the public Amazon product-description dataset.
  static ColumnMapping dataset() {
    return {"Product Name", "Category", "About Product", "description"};
  }

  // Layout written by this toolkit (write_products, generation output).
  static ColumnMapping canonical() {
    return {"product_name", "product_category", "about_product", "description"};
  }

  // Applies one `field=column` override.
  void set(std::string_view field, std::string column) {
    if (field == "product_name") {
      product_name = std::move(column);
    } else if (field == "product_category") {
      product_category = std::move(column);
    } else if (field == "about_product") {
      about_product = std::move(column);
    } else if (field == "description") {
      description = std::move(column);
    } else if (field == "source_label") {
      source_label = std::move(column);
    } else {
      throw Error("unknown mapping field \"" + std::string(field) +
                  "\" (expected product_name, product_category, "
                  "about_product, description or source_label)");
    }
  }

  void validate() const {
    const std::vector<std::pair<const char*, const std::string*>> fields = {
        {"product_name", &product_name},
        {"product_category", &product_category},
        {"about_product", &about_product},
        {"description", &description},
        {"source_label", &source_label},
    };
    std::map<std::string, std::string> used;
    for (const auto& [name, col] : fields) {
      if (col->empty() && std::string_view(name) != "source_label") {
        throw Error(std::string("column mapping: field ") + name +
                    " is not mapped");
      }
      if (col->empty()) continue;
      auto [it, inserted] = used.emplace(*col, name);
      if (!inserted) {
        throw Error("column mapping: column \"" + *col + "\" mapped to both " +
                    it->second + " and " + name);
      }
    }
  }

  friend bool operator==(const ColumnMapping&, const ColumnMapping&) = default;
};

// Canonical layout if every canonical content column is present, otherwise
// the dataset layout.
inline ColumnMapping detect_mapping(const std::vector<std::string>& columns) {
  const std::set<std::string> have(columns.begin(), columns.end());
  const auto canon = ColumnMapping::canonical();
  for (const auto* c : {&canon.product_name, &canon.product_category,
                        &canon.about_product, &canon.description}) {
    if (!have.contains(*c)) return ColumnMapping::dataset();
  }
  return canon;
}

// ---------------------------------------------------------------------------
// CSV

struct CsvRow {
  std::vector<std::string> fields;
  std::size_t line = 0;  // physical line the row starts on
};

// RFC 4180 reader: comma separated, CRLF or LF row ends, double-quoted fields
// may hold commas, quotes ("") and line breaks. A leading UTF-8 BOM is
// skipped.
inline std::vector<CsvRow> parse_csv(std::string_view text) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
  std::vector<CsvRow> rows;
  std::size_t i = 0;
  std::size_t line = 1;
  const std::size_t n = text.size();
  while (i < n) {
    CsvRow row;
    row.line = line;
    std::string field;
    bool row_done = false;
    while (!row_done) {
      field.clear();
      if (i < n && text[i] == '"') {
        const std::size_t open_line = line;
        ++i;
        for (;;) {
          if (i >= n) {
            throw ParseError("CSV row " + std::to_string(rows.size() + 1) +
                             " (line " + std::to_string(open_line) +
                             "): unterminated quoted field");
          }
          const char c = text[i];
          if (c == '"') {
            if (i + 1 < n && text[i + 1] == '"') {
              field.push_back('"');
              i += 2;
              continue;
            }
            ++i;
            break;
          }
          if (c == '\n') ++line;
          field.push_back(c);
          ++i;
        }
        if (i < n && text[i] != ',' && text[i] != '\n' && text[i] != '\r') {
          throw ParseError("CSV row " + std::to_string(rows.size() + 1) +
                           " (line " + std::to_string(line) +
                           "): unexpected character after closing quote");
        }
      } else {
        while (i < n && text[i] != ',' && text[i] != '\n' && text[i] != '\r') {
          if (text[i] == '"') {
            throw ParseError("CSV row " + std::to_string(rows.size() + 1) +
                             " (line " + std::to_string(line) +
                             "): quote inside unquoted field");
          }
          field.push_back(text[i++]);
        }
      }
      row.fields.push_back(field);
      if (i >= n) {
        row_done = true;
      } else if (text[i] == ',') {
        ++i;
      } else {
        if (text[i] == '\r') ++i;
        if (i < n && text[i] == '\n') ++i;
        ++line;
        row_done = true;
      }
    }
    // Skip blank lines.
    if (row.fields.size() == 1 && row.fields[0].empty()) continue;
    rows.push_back(std::move(row));
  }
  return rows;
}

inline std::string csv_escape(std::string_view field) {
  const bool quote =
      field.find_first_of(",\"\r\n") != std::string_view::npos ||
      (!field.empty() && (field.front() == ' ' || field.back() == ' '));
  if (!quote) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

inline void write_csv_row(std::ostream& out,
                          const std::vector<std::string>& fields) {
  for (std::size_t k = 0; k < fields.size(); ++k) {
    if (k > 0) out << ',';
    out << csv_escape(fields[k]);
  }
  out << '\n';
}

// ---------------------------------------------------------------------------

namespace detail {

inline std::string trim(std::string_view s) {
  const auto ws = " \t\r\n\f\v";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return std::string(s.substr(b, e - b + 1));
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void require_utf8(std::string_view text, const std::filesystem::path& path) {
  if (auto bad = utf8::find_invalid(text)) {
    const auto line = 1 + std::count(text.begin(),
                                     text.begin() + static_cast<std::ptrdiff_t>(*bad),
                                     '\n');
    throw ParseError(path.string() + ":" + std::to_string(line) +
                     ": invalid UTF-8 at byte " + std::to_string(*bad));
  }
}

inline std::string json_field_text(const nlohmann::json& v) {
  if (v.is_null()) return {};
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

}  // namespace detail

// Column names of a CSV header or the keys of the first JSONL object.
inline std::vector<std::string> peek_columns(const std::filesystem::path& path,
                                             FileFormat format) {
  const std::string text = detail::read_file(path);
  detail::require_utf8(text, path);
  if (format == FileFormat::csv) {
    auto rows = parse_csv(text);
    if (rows.empty()) return {};
    return rows.front().fields;
  }
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (detail::trim(line).empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      std::vector<std::string> keys;
      if (j.is_object()) {
        for (const auto& [k, v] : j.items()) keys.push_back(k);
      }
      return keys;
    } catch (const nlohmann::json::exception&) {
      return {};
    }
  }
  return {};
}

// Reads one record per CSV row / JSONL line, in file order. Only mapped
// columns are read; everything else (product URL, price, images) is ignored.
// Fields are trimmed.
inline std::vector<ProductRecord> load_products(
    const std::filesystem::path& path, FileFormat format,
    const ColumnMapping& mapping) {
  mapping.validate();
  const std::string text = detail::read_file(path);
  detail::require_utf8(text, path);
  std::vector<ProductRecord> out;

  auto make = [&](auto&& get, auto&& has) {
    ProductRecord r;
    r.product_name = detail::trim(get(mapping.product_name));
    r.product_category = detail::trim(get(mapping.product_category));
    r.about_product = detail::trim(get(mapping.about_product));
    r.description = detail::trim(get(mapping.description));
    if (!mapping.source_label.empty() && has(mapping.source_label)) {
      r.source_label = detail::trim(get(mapping.source_label));
    }
    if (r.source_label.empty()) r.source_label = mapping.default_source_label;
    return r;
  };

  if (format == FileFormat::csv) {
    const auto rows = parse_csv(text);
    if (rows.empty()) throw ParseError(path.string() + ": missing CSV header");
    std::map<std::string, std::size_t> index;
    for (std::size_t k = 0; k < rows[0].fields.size(); ++k) {
      index.emplace(detail::trim(rows[0].fields[k]), k);
    }
    for (const auto* col : {&mapping.product_name, &mapping.product_category,
                            &mapping.about_product, &mapping.description}) {
      if (!index.contains(*col)) {
        throw ParseError(path.string() + ": missing mapped column \"" + *col +
                         "\"");
      }
    }
    for (std::size_t r = 1; r < rows.size(); ++r) {
      const auto& row = rows[r];
      if (row.fields.size() != rows[0].fields.size()) {
        throw ParseError(path.string() + ": row " + std::to_string(r) +
                         " (line " + std::to_string(row.line) + ") has " +
                         std::to_string(row.fields.size()) + " fields, header has " +
                         std::to_string(rows[0].fields.size()));
      }
      out.push_back(make(
          [&](const std::string& col) -> std::string_view {
            return row.fields[index.at(col)];
          },
          [&](const std::string& col) { return index.contains(col); }));
    }
    return out;
  }

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    const std::string_view line(text.data() + pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (detail::trim(line).empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(path.string() + ":" + std::to_string(line_no) +
                       ": invalid JSON: " + e.what());
    }
    if (!j.is_object()) {
      throw ParseError(path.string() + ":" + std::to_string(line_no) +
                       ": expected a JSON object");
    }
    for (const auto* col : {&mapping.product_name, &mapping.product_category,
                            &mapping.about_product, &mapping.description}) {
      if (!j.contains(*col)) {
        throw ParseError(path.string() + ":" + std::to_string(line_no) +
                         ": missing mapped column \"" + *col + "\"");
      }
    }
    out.push_back(make(
        [&](const std::string& col) { return detail::json_field_text(j.at(col)); },
        [&](const std::string& col) { return j.contains(col); }));
  }
  return out;
}

// Detects the layout from the file's columns.
inline std::vector<ProductRecord> load_products(
    const std::filesystem::path& path, FileFormat format) {
  return load_products(path, format, detect_mapping(peek_columns(path, format)));
}

inline nlohmann::json to_json(const ProductRecord& r) {
  return {{"product_name", r.product_name},
          {"product_category", r.product_category},
          {"about_product", r.about_product},
          {"description", r.description},
          {"source_label", r.source_label}};
}

// Writes records in the canonical layout (see ColumnMapping::canonical).
inline void write_products(std::ostream& out,
                           const std::vector<ProductRecord>& records,
                           FileFormat format) {
  if (format == FileFormat::csv) {
    write_csv_row(out, {"product_name", "product_category", "about_product",
                        "description", "source_label"});
    for (const auto& r : records) {
      write_csv_row(out, {r.product_name, r.product_category, r.about_product,
                          r.description, r.source_label});
    }
    return;
  }
  for (const auto& r : records) out << to_json(r).dump() << '\n';
}

// ---------------------------------------------------------------------------

struct ValidationResult {
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

// Never throws; lists every problem that would stop the record from being
// prompted for or scored.
inline ValidationResult validate_record(const ProductRecord& rec,
                                        const LexiconSet& lex = default_lexicons()) {
  ValidationResult v;
  auto blank = [](const std::string& s) { return detail::trim(s).empty(); };
  if (blank(rec.product_name)) v.violations.push_back("empty product name");
  if (blank(rec.source_label)) v.violations.push_back("empty source label");
  if (blank(rec.product_category)) {
    v.violations.push_back("empty category");
  } else if (category_keywords(rec.product_category, lex).empty()) {
    v.violations.push_back("no usable category keywords");
  }
  if (tokenize(rec.description).word_count() == 0) {
    v.violations.push_back("empty description");
  }
  return v;
}

}  // namespace copygrade

#endif  // COPYGRADE_INGEST_HPP_
