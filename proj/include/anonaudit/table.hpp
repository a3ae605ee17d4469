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

#ifndef ANONAUDIT_TABLE_HPP
#define ANONAUDIT_TABLE_HPP

#include <cstddef>
#include <filesystem>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "anonaudit/errors.hpp"

namespace anonaudit {

// A cell is either categorical text or a canonicalized finite real.
// Numeric cells from the same column compare by value, so "1" and "1.0"
// coincide; in a Categorical column they stay distinct strings.
using Cell = std::variant<std::string, double>;

enum class ColumnKind { Categorical, Numeric };

// Multi-SA strategy: Generalization keeps the worst parameter across SAs on
// the fixed QI partition; QiUpdate treats all other SAs as additional
// quasi-identifiers when analyzing one of them.
enum class SaMode { Generalization, QiUpdate };

const char* column_kind_name(ColumnKind kind);
const char* sa_mode_name(SaMode mode);

// Canonical display text: Categorical verbatim, Numeric shortest
// round-trip representation.
std::string cell_text(const Cell& cell);

struct LoadOptions {
  char delimiter = ',';
  std::string missing_token = "?";
  std::map<std::string, ColumnKind> kind_overrides;
};

class Column {
 public:
  Column(std::string name, ColumnKind kind, std::vector<std::string> raw,
         std::vector<double> numeric);

  const std::string& name() const { return name_; }
  ColumnKind kind() const { return kind_; }
  std::size_t size() const { return raw_.size(); }
  const std::string& raw(std::size_t row) const { return raw_[row]; }
  const std::vector<std::string>& raw_cells() const { return raw_; }
  // Valid only for Numeric columns.
  double number(std::size_t row) const { return numeric_[row]; }
  const std::vector<double>& numbers() const { return numeric_; }
  Cell cell(std::size_t row) const;

 private:
  std::string name_;
  ColumnKind kind_;
  std::vector<std::string> raw_;     // original text, all kinds
  std::vector<double> numeric_;      // parsed values, Numeric only
};

// Immutable columnar table. All accessors are const; safe to share across
// concurrent readers.
class Dataset {
 public:
  Dataset() = default;

  // Builds a dataset from parsed field values (no CSV-level unescaping or
  // trimming happens here). Applies kind inference, missing-token demotion,
  // and per-column kind overrides exactly as the file loader does.
  static Dataset from_rows(const std::vector<std::string>& header,
                           std::vector<std::vector<std::string>> rows,
                           const LoadOptions& options = {});

  std::size_t row_count() const { return row_count_; }
  std::size_t column_count() const { return columns_.size(); }
  const std::vector<Column>& columns() const { return columns_; }
  const Column& column(std::size_t index) const { return columns_[index]; }
  // Throws UnknownColumn naming the offender.
  std::size_t column_index(std::string_view name) const;
  const Column& column(std::string_view name) const;
  bool has_column(std::string_view name) const;
  Cell cell(std::size_t row, std::size_t col) const;

  const std::string& source() const { return source_; }
  void set_source(std::string source) { source_ = std::move(source); }

  bool operator==(const Dataset& other) const;

 private:
  friend Dataset parse_delimited(std::string_view text,
                                 const LoadOptions& options,
                                 std::string_view source);

  std::vector<Column> columns_;
  std::size_t row_count_ = 0;
  std::string source_ = "<memory>";
};

// Numeric iff at least one non-missing cell exists and every non-missing
// cell parses as a finite real; an all-missing column is Categorical.
ColumnKind infer_kind(std::span<const std::string> cells,
                      std::string_view missing_token = "?");

// True when the whole trimmed text parses as one finite real.
bool parse_finite_real(std::string_view text, double& out);

// RFC 4180-style reader: double-quote quoting, quote-doubling, quoted fields
// may embed delimiters and newlines. Input must be valid UTF-8. Unquoted
// fields are trimmed of ASCII space/tab.
Dataset load_delimited(const std::filesystem::path& path,
                       const LoadOptions& options = {});
Dataset parse_delimited(std::string_view text, const LoadOptions& options = {},
                        std::string_view source = "<memory>");

// Inverse of load_delimited: fields are quoted when they contain the
// delimiter, quotes, CR/LF, or leading/trailing whitespace.
void write_delimited(const Dataset& data, std::ostream& out,
                     char delimiter = ',');
std::string to_delimited(const Dataset& data, char delimiter = ',');

struct AttributeSchema {
  std::vector<std::string> qi;
  std::vector<std::string> sa;
  SaMode mode = SaMode::Generalization;
};

struct ValidatedSchema {
  std::vector<std::size_t> qi;   // resolved column indices
  std::vector<std::size_t> sa;
  SaMode mode = SaMode::Generalization;
};

// Succeeds iff qi is non-empty, all names resolve, qi/sa are disjoint and
// duplicate-free, and sa is non-empty when require_sa is set.
ValidatedSchema validate_schema(const Dataset& data,
                                const AttributeSchema& schema,
                                bool require_sa = true);

}  // namespace anonaudit

#endif  // ANONAUDIT_TABLE_HPP
