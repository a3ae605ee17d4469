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

#include "anonaudit/partition.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace anonaudit {

namespace {

// Rank codes per row for one column, ranks assigned in value order so that
// lexicographic code order equals key order.
std::vector<std::uint32_t> rank_codes(const Column& col) {
  const std::size_t n = col.size();
  std::vector<std::uint32_t> codes(n);
  if (col.kind() == ColumnKind::Numeric) {
    std::vector<double> sorted = col.numbers();
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (std::size_t r = 0; r < n; ++r) {
      codes[r] = static_cast<std::uint32_t>(
          std::lower_bound(sorted.begin(), sorted.end(), col.number(r)) -
          sorted.begin());
    }
  } else {
    std::vector<std::string_view> sorted;
    sorted.reserve(n);
    for (std::size_t r = 0; r < n; ++r) sorted.push_back(col.raw(r));
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (std::size_t r = 0; r < n; ++r) {
      codes[r] = static_cast<std::uint32_t>(
          std::lower_bound(sorted.begin(), sorted.end(),
                           std::string_view(col.raw(r))) -
          sorted.begin());
    }
  }
  return codes;
}

}  // namespace

Partition partition_by(const Dataset& data,
                       std::span<const std::string> columns) {
  if (columns.empty()) {
    throw Error(Errc::EmptyQi, "partition requires at least one column");
  }
  if (data.row_count() == 0) {
    throw Error(Errc::EmptyDataset, "cannot partition an empty dataset");
  }
  std::vector<const Column*> cols;
  cols.reserve(columns.size());
  for (const auto& name : columns) {
    cols.push_back(&data.column(data.column_index(name)));
  }

  const std::size_t n = data.row_count();
  const std::size_t k = cols.size();
  std::vector<std::vector<std::uint32_t>> codes;
  codes.reserve(k);
  for (const Column* col : cols) {
    codes.push_back(rank_codes(*col));
  }

  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(),
            [&](std::uint32_t a, std::uint32_t b) {
              for (std::size_t c = 0; c < k; ++c) {
                if (codes[c][a] != codes[c][b]) {
                  return codes[c][a] < codes[c][b];
                }
              }
              return a < b;
            });

  Partition part;
  part.grouping_columns.assign(columns.begin(), columns.end());
  auto same_key = [&](std::uint32_t a, std::uint32_t b) {
    for (std::size_t c = 0; c < k; ++c) {
      if (codes[c][a] != codes[c][b]) return false;
    }
    return true;
  };
  std::size_t start = 0;
  while (start < n) {
    std::size_t end = start + 1;
    while (end < n && same_key(order[start], order[end])) ++end;
    EquivalenceClass ec;
    ec.key.reserve(k);
    for (std::size_t c = 0; c < k; ++c) {
      ec.key.push_back(cols[c]->cell(order[start]));
    }
    ec.rows.assign(order.begin() + start, order.begin() + end);
    part.classes.push_back(std::move(ec));
    start = end;
  }
  return part;
}

Distribution distribution(const Dataset& data,
                          std::span<const std::uint32_t> rows,
                          std::string_view column) {
  const Column& col = data.column(data.column_index(column));
  if (rows.empty()) {
    throw Error(Errc::EmptyRowSet,
                "distribution over an empty row set for column '" +
                    std::string(column) + "'");
  }
  Distribution dist;
  if (col.kind() == ColumnKind::Numeric) {
    std::map<double, std::uint32_t> counts;
    for (std::uint32_t r : rows) ++counts[col.number(r)];
    dist.support.reserve(counts.size());
    for (const auto& [value, count] : counts) {
      dist.support.emplace_back(value);
      dist.counts.push_back(count);
    }
  } else {
    std::map<std::string_view, std::uint32_t> counts;
    for (std::uint32_t r : rows) ++counts[col.raw(r)];
    dist.support.reserve(counts.size());
    for (const auto& [value, count] : counts) {
      dist.support.emplace_back(std::string(value));
      dist.counts.push_back(count);
    }
  }
  const double total = static_cast<double>(rows.size());
  dist.probs.reserve(dist.counts.size());
  for (std::uint32_t c : dist.counts) {
    dist.probs.push_back(static_cast<double>(c) / total);
  }
  return dist;
}

Distribution distribution(const Dataset& data, std::string_view column) {
  std::vector<std::uint32_t> all(data.row_count());
  std::iota(all.begin(), all.end(), 0u);
  return distribution(data, all, column);
}

std::pair<std::vector<double>, std::vector<double>> align(
    const Distribution& global, const Distribution& local) {
  std::vector<double> q(global.support.size(), 0.0);
  for (std::size_t i = 0; i < local.support.size(); ++i) {
    auto it = std::lower_bound(global.support.begin(), global.support.end(),
                               local.support[i]);
    if (it == global.support.end() || *it != local.support[i]) {
      throw Error(Errc::SupportMismatch,
                  "value '" + cell_text(local.support[i]) +
                      "' is not in the global support");
    }
    q[static_cast<std::size_t>(it - global.support.begin())] = local.probs[i];
  }
  return {global.probs, q};
}

}  // namespace anonaudit
