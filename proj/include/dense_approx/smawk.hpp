// Copyright 2026 The dense_approx Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DENSE_APPROX_SMAWK_HPP_
#define DENSE_APPROX_SMAWK_HPP_

#include <cstddef>
#include <vector>

namespace dense_approx {

namespace smawk_internal {

template <typename Lookup>
void Solve(const std::vector<size_t>& rows, const std::vector<size_t>& cols,
           Lookup& lookup, std::vector<size_t>& argmin) {
  if (rows.empty()) return;
  std::vector<size_t> kept;
  kept.reserve(rows.size());
  for (size_t c : cols) {
    while (!kept.empty()) {
      size_t r = rows[kept.size() - 1];
      if (lookup(r, kept.back()) <= lookup(r, c)) break;
      kept.pop_back();
    }
    if (kept.size() < rows.size()) kept.push_back(c);
  }
  std::vector<size_t> odd;
  odd.reserve(rows.size() / 2);
  for (size_t i = 1; i < rows.size(); i += 2) odd.push_back(rows[i]);
  Solve(odd, kept, lookup, argmin);
  size_t k = 0;
  for (size_t i = 0; i < rows.size(); i += 2) {
    const size_t r = rows[i];
    const size_t last = i + 1 < rows.size() ? argmin[rows[i + 1]] : kept.back();
    size_t best = kept[k];
    auto best_value = lookup(r, best);
    while (kept[k] != last) {
      ++k;
      auto v = lookup(r, kept[k]);
      if (v < best_value) {
        best = kept[k];
        best_value = v;
      }
    }
    argmin[r] = best;
  }
}

}  // namespace smawk_internal

// Leftmost row minima of a totally monotone rows x cols matrix given by
// lookup(row, col), in O(rows + cols) lookups.
template <typename Lookup>
std::vector<size_t> SmawkRowMinima(size_t rows, size_t cols, Lookup lookup) {
  std::vector<size_t> argmin(rows, 0);
  if (rows == 0 || cols == 0) return argmin;
  std::vector<size_t> row_ids(rows), col_ids(cols);
  for (size_t i = 0; i < rows; ++i) row_ids[i] = i;
  for (size_t j = 0; j < cols; ++j) col_ids[j] = j;
  smawk_internal::Solve(row_ids, col_ids, lookup, argmin);
  return argmin;
}

}  // namespace dense_approx

#endif  // DENSE_APPROX_SMAWK_HPP_
