// Copyright 2026 The anonaudit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "anonaudit/table.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>
#include <system_error>
#include <unordered_set>

namespace anonaudit {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::FileNotFound: return "FileNotFound";
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::DuplicateHeader: return "DuplicateHeader";
    case Errc::MalformedRow: return "MalformedRow";
    case Errc::InvalidEncoding: return "InvalidEncoding";
    case Errc::InvalidDelimiter: return "InvalidDelimiter";
    case Errc::EmptyDataset: return "EmptyDataset";
    case Errc::UnknownColumn: return "UnknownColumn";
    case Errc::OverlappingQiSa: return "OverlappingQiSa";
    case Errc::EmptyQi: return "EmptyQi";
    case Errc::EmptySa: return "EmptySa";
    case Errc::DuplicateColumn: return "DuplicateColumn";
    case Errc::UnknownSa: return "UnknownSa";
    case Errc::InvalidKindOverride: return "InvalidKindOverride";
    case Errc::EmptyRowSet: return "EmptyRowSet";
    case Errc::SupportMismatch: return "SupportMismatch";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::DivisionByZeroDomain: return "DivisionByZeroDomain";
  }
  return "Unknown";
}

const char* column_kind_name(ColumnKind kind) {
  return kind == ColumnKind::Numeric ? "numeric" : "categorical";
}

const char* sa_mode_name(SaMode mode) {
  return mode == SaMode::QiUpdate ? "qi-update" : "generalization";
}

std::string cell_text(const Cell& cell) {
  if (const auto* s = std::get_if<std::string>(&cell)) {
    return *s;
  }
  const double v = std::get<double>(cell);
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

bool parse_finite_real(std::string_view text, double& out) {
  if (text.empty()) {
    return false;
  }
  // from_chars rejects a leading '+'; accept it explicitly.
  if (text.front() == '+') {
    text.remove_prefix(1);
    if (text.empty() || text.front() == '-' || text.front() == '+') {
      return false;
    }
  }
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc() || res.ptr != last || !std::isfinite(value)) {
    return false;
  }
  out = value == 0.0 ? 0.0 : value;  // canonicalize -0.0
  return true;
}

ColumnKind infer_kind(std::span<const std::string> cells,
                      std::string_view missing_token) {
  bool saw_value = false;
  for (const auto& cell : cells) {
    if (cell == missing_token) {
      continue;
    }
    double v;
    if (!parse_finite_real(cell, v)) {
      return ColumnKind::Categorical;
    }
    saw_value = true;
  }
  return saw_value ? ColumnKind::Numeric : ColumnKind::Categorical;
}

Column::Column(std::string name, ColumnKind kind, std::vector<std::string> raw,
               std::vector<double> numeric)
    : name_(std::move(name)),
      kind_(kind),
      raw_(std::move(raw)),
      numeric_(std::move(numeric)) {}

Cell Column::cell(std::size_t row) const {
  if (kind_ == ColumnKind::Numeric) {
    return Cell(numeric_[row]);
  }
  return Cell(raw_[row]);
}

namespace {

bool valid_utf8(std::string_view text, std::size_t& bad_offset) {
  const auto* p = reinterpret_cast<const unsigned char*>(text.data());
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    const unsigned char c = p[i];
    std::size_t len;
    std::uint32_t cp;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      len = 2;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4;
      cp = c & 0x07;
    } else {
      bad_offset = i;
      return false;
    }
    if (i + len > n) {
      bad_offset = i;
      return false;
    }
    for (std::size_t j = 1; j < len; ++j) {
      if ((p[i + j] & 0xC0) != 0x80) {
        bad_offset = i;
        return false;
      }
      cp = (cp << 6) | (p[i + j] & 0x3F);
    }
    const bool overlong = (len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) ||
                          (len == 4 && cp < 0x10000);
    if (overlong || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
      bad_offset = i;
      return false;
    }
    i += len;
  }
  return true;
}

bool is_trim_char(char c, char delimiter) {
  return (c == ' ' || c == '\t') && c != delimiter;
}

std::string_view trim(std::string_view field, char delimiter) {
  std::size_t b = 0;
  std::size_t e = field.size();
  while (b < e && is_trim_char(field[b], delimiter)) ++b;
  while (e > b && is_trim_char(field[e - 1], delimiter)) --e;
  return field.substr(b, e - b);
}

// One pass over the buffer; quoted fields may embed delimiters and newlines.
// A field counts as quoted only when its first byte is '"'.
class RecordReader {
 public:
  RecordReader(std::string_view text, char delimiter)
      : text_(text), delimiter_(delimiter) {}

  // Fills the next record; false at end of input.
  bool next(std::vector<std::string>& fields, std::size_t& start_line) {
    const std::size_t n = text_.size();
    if (pos_ >= n) {
      return false;
    }
    fields.clear();
    start_line = line_;
    bool record_done = false;
    while (!record_done) {
      std::string field;
      if (pos_ < n && text_[pos_] == '"') {
        ++pos_;
        bool closed = false;
        while (pos_ < n) {
          const char c = text_[pos_];
          if (c == '"') {
            if (pos_ + 1 < n && text_[pos_ + 1] == '"') {
              field.push_back('"');
              pos_ += 2;
            } else {
              ++pos_;
              closed = true;
              break;
            }
          } else {
            if (c == '\n') ++line_;
            field.push_back(c);
            ++pos_;
          }
        }
        if (!closed) {
          throw Error(Errc::MalformedRow,
                      "line " + std::to_string(start_line) +
                          ": unterminated quoted field");
        }
        // Only whitespace may follow the closing quote.
        while (pos_ < n && is_trim_char(text_[pos_], delimiter_)) ++pos_;
      } else {
        const std::size_t start = pos_;
        while (pos_ < n && text_[pos_] != delimiter_ && text_[pos_] != '\n' &&
               !(text_[pos_] == '\r' && pos_ + 1 < n &&
                 text_[pos_ + 1] == '\n')) {
          ++pos_;
        }
        field.assign(trim(text_.substr(start, pos_ - start), delimiter_));
      }
      if (pos_ >= n) {
        record_done = true;
      } else if (text_[pos_] == delimiter_) {
        ++pos_;
      } else if (text_[pos_] == '\n') {
        ++pos_;
        ++line_;
        record_done = true;
      } else if (text_[pos_] == '\r' && pos_ + 1 < n &&
                 text_[pos_ + 1] == '\n') {
        pos_ += 2;
        ++line_;
        record_done = true;
      } else {
        throw Error(Errc::MalformedRow,
                    "line " + std::to_string(line_) +
                        ": unexpected character after closing quote");
      }
      fields.push_back(std::move(field));
    }
    return true;
  }

 private:
  std::string_view text_;
  char delimiter_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

bool needs_quoting(std::string_view field, char delimiter) {
  if (field.empty()) {
    return false;
  }
  if (is_trim_char(field.front(), delimiter) ||
      is_trim_char(field.back(), delimiter)) {
    return true;
  }
  return field.find_first_of(std::string{delimiter} + "\"\r\n") !=
         std::string_view::npos;
}

void write_field(std::ostream& out, std::string_view field, char delimiter) {
  if (!needs_quoting(field, delimiter)) {
    out << field;
    return;
  }
  out << '"';
  for (char c : field) {
    if (c == '"') out << '"';
    out << c;
  }
  out << '"';
}

void validate_header(const std::vector<std::string>& header,
                     const LoadOptions& options) {
  if (header.empty()) {
    throw Error(Errc::EmptyInput, "no header record");
  }
  std::unordered_set<std::string_view> seen;
  for (const auto& name : header) {
    if (name.empty()) {
      throw Error(Errc::MalformedRow, "line 1: empty column name in header");
    }
    if (!seen.insert(name).second) {
      throw Error(Errc::DuplicateHeader, "duplicate column name '" + name + "'");
    }
  }
  for (const auto& [name, kind] : options.kind_overrides) {
    (void)kind;
    if (seen.find(name) == seen.end()) {
      throw Error(Errc::UnknownColumn,
                  "kind override names unknown column '" + name + "'");
    }
  }
}

// Kind inference, missing-token demotion and override checks over
// column-major cells; consumes the cell storage.
std::vector<Column> assemble_columns(const std::vector<std::string>& header,
                                     std::vector<std::vector<std::string>> cells,
                                     const LoadOptions& options) {
  std::vector<Column> columns;
  columns.reserve(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) {
    const std::string& name = header[c];
    const bool has_missing =
        std::find(cells[c].begin(), cells[c].end(), options.missing_token) !=
        cells[c].end();

    ColumnKind kind;
    auto override_it = options.kind_overrides.find(name);
    if (override_it != options.kind_overrides.end()) {
      kind = override_it->second;
      if (kind == ColumnKind::Numeric) {
        if (has_missing) {
          throw Error(Errc::InvalidKindOverride,
                      "column '" + name +
                          "': cannot force numeric kind, column contains the "
                          "missing token '" +
                          options.missing_token + "'");
        }
        for (const auto& cell : cells[c]) {
          double v;
          if (!parse_finite_real(cell, v)) {
            throw Error(Errc::InvalidKindOverride,
                        "column '" + name +
                            "': cannot force numeric kind, cell '" + cell +
                            "' is not a finite number");
          }
        }
      }
    } else {
      kind = infer_kind(cells[c], options.missing_token);
      // Missing tokens stay distinct categorical values, so their presence
      // demotes an otherwise numeric column.
      if (kind == ColumnKind::Numeric && has_missing) {
        kind = ColumnKind::Categorical;
      }
    }

    std::vector<double> numeric;
    if (kind == ColumnKind::Numeric) {
      numeric.reserve(cells[c].size());
      for (const auto& cell : cells[c]) {
        double v = 0.0;
        parse_finite_real(cell, v);
        numeric.push_back(v);
      }
    }
    columns.emplace_back(name, kind, std::move(cells[c]), std::move(numeric));
  }
  return columns;
}

}  // namespace

Dataset Dataset::from_rows(const std::vector<std::string>& header,
                           std::vector<std::vector<std::string>> rows,
                           const LoadOptions& options) {
  validate_header(header, options);

  const std::size_t width = header.size();
  const std::size_t n_rows = rows.size();
  std::vector<std::vector<std::string>> cells(width);
  for (auto& col : cells) col.reserve(n_rows);
  for (std::size_t r = 0; r < n_rows; ++r) {
    if (rows[r].size() != width) {
      throw Error(Errc::MalformedRow,
                  "row " + std::to_string(r + 1) + ": expected " +
                      std::to_string(width) + " fields, got " +
                      std::to_string(rows[r].size()));
    }
    for (std::size_t c = 0; c < width; ++c) {
      cells[c].push_back(std::move(rows[r][c]));
    }
  }
  rows.clear();
  rows.shrink_to_fit();

  Dataset data;
  data.row_count_ = n_rows;
  data.columns_ = assemble_columns(header, std::move(cells), options);
  return data;
}

std::size_t Dataset::column_index(std::string_view name) const {
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (columns_[i].name() == name) {
      return i;
    }
  }
  throw Error(Errc::UnknownColumn, "unknown column '" + std::string(name) + "'");
}

const Column& Dataset::column(std::string_view name) const {
  return columns_[column_index(name)];
}

bool Dataset::has_column(std::string_view name) const {
  for (const auto& col : columns_) {
    if (col.name() == name) return true;
  }
  return false;
}

Cell Dataset::cell(std::size_t row, std::size_t col) const {
  return columns_[col].cell(row);
}

bool Dataset::operator==(const Dataset& other) const {
  if (row_count_ != other.row_count_ ||
      columns_.size() != other.columns_.size()) {
    return false;
  }
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    const Column& a = columns_[c];
    const Column& b = other.columns_[c];
    if (a.name() != b.name() || a.kind() != b.kind()) {
      return false;
    }
    for (std::size_t r = 0; r < row_count_; ++r) {
      if (a.cell(r) != b.cell(r)) {
        return false;
      }
    }
  }
  return true;
}

Dataset parse_delimited(std::string_view text, const LoadOptions& options,
                        std::string_view source) {
  if (options.delimiter == '"' || options.delimiter == '\n' ||
      options.delimiter == '\r') {
    throw Error(Errc::InvalidDelimiter, "delimiter cannot be a quote or newline");
  }
  std::size_t bad = 0;
  if (!valid_utf8(text, bad)) {
    throw Error(Errc::InvalidEncoding,
                "invalid UTF-8 byte at offset " + std::to_string(bad));
  }
  // Strip a UTF-8 BOM so the first header name resolves cleanly.
  if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") {
    text.remove_prefix(3);
  }
  RecordReader reader(text, options.delimiter);
  std::vector<std::string> header;
  std::size_t line = 0;
  if (!reader.next(header, line)) {
    throw Error(Errc::EmptyInput, "empty input: no header record");
  }
  validate_header(header, options);

  // Records stream straight into column-major storage; no row-major copy.
  // Newline count over-estimates rows when quotes embed newlines; reserve
  // is capacity only, untouched pages cost nothing.
  const std::size_t width = header.size();
  const std::size_t row_estimate = static_cast<std::size_t>(
      std::count(text.begin(), text.end(), '\n'));
  std::vector<std::vector<std::string>> cells(width);
  for (auto& col : cells) col.reserve(row_estimate);
  std::size_t n_rows = 0;
  std::vector<std::string> fields;
  while (reader.next(fields, line)) {
    if (fields.size() != width) {
      throw Error(Errc::MalformedRow,
                  "line " + std::to_string(line) + ": expected " +
                      std::to_string(width) + " fields, got " +
                      std::to_string(fields.size()));
    }
    for (std::size_t c = 0; c < width; ++c) {
      cells[c].push_back(std::move(fields[c]));
    }
    ++n_rows;
  }

  Dataset data;
  data.row_count_ = n_rows;
  data.columns_ = assemble_columns(header, std::move(cells), options);
  data.set_source(std::string(source));
  return data;
}

Dataset load_delimited(const std::filesystem::path& path,
                       const LoadOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(Errc::FileNotFound, "cannot open '" + path.string() + "'");
  }
  in.seekg(0, std::ios::end);
  const auto size = in.tellg();
  in.seekg(0, std::ios::beg);
  std::string buf(size > 0 ? static_cast<std::size_t>(size) : 0, '\0');
  in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
  return parse_delimited(buf, options, path.string());
}

void write_delimited(const Dataset& data, std::ostream& out, char delimiter) {
  const auto& cols = data.columns();
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (c) out << delimiter;
    write_field(out, cols[c].name(), delimiter);
  }
  out << '\n';
  for (std::size_t r = 0; r < data.row_count(); ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (c) out << delimiter;
      write_field(out, cols[c].raw(r), delimiter);
    }
    out << '\n';
  }
}

std::string to_delimited(const Dataset& data, char delimiter) {
  std::ostringstream out;
  write_delimited(data, out, delimiter);
  return out.str();
}

ValidatedSchema validate_schema(const Dataset& data,
                                const AttributeSchema& schema,
                                bool require_sa) {
  if (schema.qi.empty()) {
    throw Error(Errc::EmptyQi, "quasi-identifier list is empty");
  }
  if (require_sa && schema.sa.empty()) {
    throw Error(Errc::EmptySa, "sensitive-attribute list is empty");
  }
  ValidatedSchema out;
  out.mode = schema.mode;
  std::set<std::string_view> qi_seen;
  for (const auto& name : schema.qi) {
    if (!qi_seen.insert(name).second) {
      throw Error(Errc::DuplicateColumn,
                  "column '" + name + "' listed twice in quasi-identifiers");
    }
    out.qi.push_back(data.column_index(name));
  }
  std::set<std::string_view> sa_seen;
  for (const auto& name : schema.sa) {
    if (!sa_seen.insert(name).second) {
      throw Error(Errc::DuplicateColumn,
                  "column '" + name + "' listed twice in sensitive attributes");
    }
    if (qi_seen.count(name)) {
      throw Error(Errc::OverlappingQiSa,
                  "column '" + name +
                      "' is both a quasi-identifier and a sensitive attribute");
    }
    out.sa.push_back(data.column_index(name));
  }
  return out;
}

}  // namespace anonaudit
