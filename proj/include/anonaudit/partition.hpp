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

#ifndef ANONAUDIT_PARTITION_HPP
#define ANONAUDIT_PARTITION_HPP

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "anonaudit/table.hpp"

namespace anonaudit {

// Maximal set of rows sharing one value tuple on the grouping columns.
struct EquivalenceClass {
  std::vector<Cell> key;            // one value per grouping column
  std::vector<std::uint32_t> rows;  // ascending row indices, non-empty
};

struct Partition {
  std::vector<std::string> grouping_columns;
  std::vector<EquivalenceClass> classes;  // sorted by key
};

// Value -> relative frequency over a row subset for one column. Support is
// duplicate-free; sorted ascending for Numeric columns, byte-lexicographic
// for Categorical. probs are in (0,1] and sum to 1; counts are the raw
// occurrence counts behind them.
struct Distribution {
  std::vector<Cell> support;
  std::vector<double> probs;
  std::vector<std::uint32_t> counts;
};

// Groups rows into equivalence classes over the given columns. Classes come
// out key-sorted, rows within a class ascending, so results are reproducible
// byte-for-byte.
Partition partition_by(const Dataset& data,
                       std::span<const std::string> columns);

Distribution distribution(const Dataset& data,
                          std::span<const std::uint32_t> rows,
                          std::string_view column);

// Distribution of the column over all rows.
Distribution distribution(const Dataset& data, std::string_view column);

// Aligns a row-subset distribution against the whole-table one: returns
// equal-length probability vectors (P, Q) over global.support, with local
// values absent from the subset mapped to 0. Throws SupportMismatch if the
// local support is not contained in the global one.
std::pair<std::vector<double>, std::vector<double>> align(
    const Distribution& global, const Distribution& local);

}  // namespace anonaudit

#endif  // ANONAUDIT_PARTITION_HPP
