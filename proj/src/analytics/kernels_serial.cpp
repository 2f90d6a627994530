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

#include <algorithm>

#include "classview/analytics/kernels.hpp"

namespace classview::kernels::serial {

void top1(MatrixView m, std::span<ClassId> predicted, std::span<float> max_pred) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto row = m.row(i);
    ClassId best = argmax(row);
    predicted[i] = best;
    max_pred[i] = row[best];
  }
}

void confusion(std::span<const ClassId> truth, std::span<const ClassId> predicted,
               std::size_t num_classes, std::span<std::uint64_t> cells) {
  std::fill(cells.begin(), cells.end(), 0);
  for (std::size_t i = 0; i < truth.size(); ++i) {
    ++cells[truth[i] * num_classes + predicted[i]];
  }
}

void histograms(MatrixView m, const BinTable& bins, std::span<std::uint64_t> out) {
  const std::size_t nbins = static_cast<std::size_t>(bins.count());
  std::fill(out.begin(), out.end(), 0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto row = m.row(i);
    for (std::size_t c = 0; c < m.num_classes; ++c) {
      ++out[c * nbins + static_cast<std::size_t>(bins(row[c]))];
    }
  }
}

void sorted_columns(MatrixView m, std::span<float> out) {
  const std::size_t n = m.rows();
  for (std::size_t c = 0; c < m.num_classes; ++c) {
    float* col = out.data() + c * n;
    for (std::size_t i = 0; i < n; ++i) col[i] = m.values[i * m.num_classes + c];
    std::sort(col, col + n);
  }
}

void filter_any(MatrixView m, FloatInterval range, ClassId first, ClassId last,
                std::span<std::uint8_t> pass) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto row = m.row(i);
    std::uint8_t hit = 0;
    for (std::size_t c = first; c <= last; ++c) {
      if (range.contains(row[c])) {
        hit = 1;
        break;
      }
    }
    pass[i] = hit;
  }
}

}  // namespace classview::kernels::serial
