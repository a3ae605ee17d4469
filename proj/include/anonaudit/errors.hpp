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

#ifndef ANONAUDIT_ERRORS_HPP
#define ANONAUDIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace anonaudit {

enum class Errc {
  // input / parse
  FileNotFound,
  EmptyInput,
  DuplicateHeader,
  MalformedRow,
  InvalidEncoding,
  InvalidDelimiter,
  EmptyDataset,
  // schema
  UnknownColumn,
  OverlappingQiSa,
  EmptyQi,
  EmptySa,
  DuplicateColumn,
  UnknownSa,
  InvalidKindOverride,
  // numeric / internal contracts
  EmptyRowSet,
  SupportMismatch,
  LengthMismatch,
  DivisionByZeroDomain,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace anonaudit

#endif  // ANONAUDIT_ERRORS_HPP
