/*
 * Copyright 2026 The classview Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

// Data-parallel passes over the N x K prediction matrix. Every kernel has a
// straightforward serial reference in kernels::serial and an OpenMP version
// in kernels::parallel with identical results; the tests compare the two and
// bench/ measures them against each other.

#include <cstdint>
#include <span>

#include "classview/analytics/quantize.hpp"
#include "classview/analytics/types.hpp"

namespace classview::kernels {

/// Row-major N x K probability matrix.
struct MatrixView {
  std::span<const float> values;
  std::size_t num_classes = 0;

  std::size_t rows() const noexcept { return num_classes ? values.size() / num_classes : 0; }
  std::span<const float> row(std::size_t i) const {
    return values.subspan(i * num_classes, num_classes);
  }
};

/// Lowest index of the maximum element.
template <typename T>
ClassId argmax(std::span<const T> values) noexcept {
  std::size_t best = 0;
  for (std::size_t j = 1; j < values.size(); ++j) {
    if (values[j] > values[best]) best = j;
  }
  return static_cast<ClassId>(best);
}

namespace serial {

/// Top-1 class and its probability per row.
void top1(MatrixView m, std::span<ClassId> predicted, std::span<float> max_pred);

/// cells[t * K + p] counts rows with true class t and prediction p.
void confusion(std::span<const ClassId> truth, std::span<const ClassId> predicted,
               std::size_t num_classes, std::span<std::uint64_t> cells);

/// out[c * B + b] counts rows whose value in column c lands in bin b.
void histograms(MatrixView m, const BinTable& bins, std::span<std::uint64_t> out);

/// out[c * N ..] holds column c in ascending order.
void sorted_columns(MatrixView m, std::span<float> out);

/// pass[i] = 1 iff some coordinate of row i in [first, last] lies in range.
void filter_any(MatrixView m, FloatInterval range, ClassId first, ClassId last,
                std::span<std::uint8_t> pass);

}  // namespace serial

namespace parallel {

void top1(MatrixView m, std::span<ClassId> predicted, std::span<float> max_pred);
void confusion(std::span<const ClassId> truth, std::span<const ClassId> predicted,
               std::size_t num_classes, std::span<std::uint64_t> cells);
void histograms(MatrixView m, const BinTable& bins, std::span<std::uint64_t> out);
void sorted_columns(MatrixView m, std::span<float> out);
void filter_any(MatrixView m, FloatInterval range, ClassId first, ClassId last,
                std::span<std::uint8_t> pass);

/// Same result as histograms(), computed from sorted_columns() output by
/// binary-searching the bin edges: O(K * B * log N) instead of O(N * K).
void histograms_from_sorted(std::span<const float> sorted, std::size_t rows,
                            std::size_t num_classes, const BinTable& bins,
                            std::span<std::uint64_t> out);

}  // namespace parallel

}  // namespace classview::kernels
