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

#include <omp.h>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <vector>

#include "classview/analytics/kernels.hpp"

namespace classview::kernels::parallel {

namespace {

constexpr std::size_t kColumnBlock = 16;

// Maps a float to an unsigned key with the same ordering (negatives
// included, so -0.0 sorts just below +0.0).
std::uint32_t order_key(float f) {
  auto bits = std::bit_cast<std::uint32_t>(f);
  return (bits & 0x80000000u) ? ~bits : bits | 0x80000000u;
}

float from_key(std::uint32_t key) {
  return std::bit_cast<float>((key & 0x80000000u) ? key & 0x7fffffffu : ~key);
}

// LSD radix sort, 8 bits per pass; passes where every key shares the digit
// are skipped.
void radix_sort(std::span<float> col, std::vector<std::uint32_t>& a, std::vector<std::uint32_t>& b) {
  const std::size_t n = col.size();
  a.resize(n);
  b.resize(n);
  std::size_t counts[4][256] = {};
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t k = order_key(col[i]);
    a[i] = k;
    for (int d = 0; d < 4; ++d) ++counts[d][(k >> (8 * d)) & 0xffu];
  }
  for (int d = 0; d < 4; ++d) {
    auto& cnt = counts[d];
    if (std::find(std::begin(cnt), std::end(cnt), n) != std::end(cnt)) continue;
    std::size_t sum = 0;
    for (auto& c : cnt) {
      std::size_t here = c;
      c = sum;
      sum += here;
    }
    for (std::size_t i = 0; i < n; ++i) b[cnt[(a[i] >> (8 * d)) & 0xffu]++] = a[i];
    a.swap(b);
  }
  for (std::size_t i = 0; i < n; ++i) col[i] = from_key(a[i]);
}

}  // namespace

void top1(MatrixView m, std::span<ClassId> predicted, std::span<float> max_pred) {
  const auto rows = static_cast<std::ptrdiff_t>(m.rows());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < rows; ++i) {
    auto row = m.row(static_cast<std::size_t>(i));
    ClassId best = argmax(row);
    predicted[i] = best;
    max_pred[i] = row[best];
  }
}

void confusion(std::span<const ClassId> truth, std::span<const ClassId> predicted,
               std::size_t num_classes, std::span<std::uint64_t> cells) {
  const std::size_t ncells = num_classes * num_classes;
  const auto n = static_cast<std::ptrdiff_t>(truth.size());
  std::fill(cells.begin(), cells.end(), 0);
  const int nthreads = omp_get_max_threads();
  if (nthreads == 1) {
    for (std::ptrdiff_t i = 0; i < n; ++i) ++cells[truth[i] * num_classes + predicted[i]];
    return;
  }
  std::vector<std::uint64_t> local(ncells * static_cast<std::size_t>(nthreads), 0);
#pragma omp parallel num_threads(nthreads)
  {
    std::uint64_t* mine = local.data() + ncells * static_cast<std::size_t>(omp_get_thread_num());
#pragma omp for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) ++mine[truth[i] * num_classes + predicted[i]];
#pragma omp for schedule(static)
    for (std::ptrdiff_t cell = 0; cell < static_cast<std::ptrdiff_t>(ncells); ++cell) {
      std::uint64_t sum = 0;
      for (int t = 0; t < nthreads; ++t) sum += local[ncells * static_cast<std::size_t>(t) + cell];
      cells[cell] = sum;
    }
  }
}

void histograms(MatrixView m, const BinTable& bins, std::span<std::uint64_t> out) {
  const std::size_t nbins = static_cast<std::size_t>(bins.count());
  const std::size_t width = m.num_classes * nbins;
  const auto rows = static_cast<std::ptrdiff_t>(m.rows());
  const int nthreads = omp_get_max_threads();
  std::vector<std::uint64_t> local(width * static_cast<std::size_t>(nthreads), 0);
#pragma omp parallel num_threads(nthreads)
  {
    std::uint64_t* mine = local.data() + width * static_cast<std::size_t>(omp_get_thread_num());
#pragma omp for schedule(static)
    for (std::ptrdiff_t i = 0; i < rows; ++i) {
      const float* row = m.values.data() + static_cast<std::size_t>(i) * m.num_classes;
      for (std::size_t c = 0; c < m.num_classes; ++c) {
        ++mine[c * nbins + static_cast<std::size_t>(bins(row[c]))];
      }
    }
#pragma omp for schedule(static)
    for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(width); ++k) {
      std::uint64_t sum = 0;
      for (int t = 0; t < nthreads; ++t) sum += local[width * static_cast<std::size_t>(t) + k];
      out[k] = sum;
    }
  }
}

void sorted_columns(MatrixView m, std::span<float> out) {
  const std::size_t n = m.rows();
  const std::size_t k = m.num_classes;
  const auto nblocks = static_cast<std::ptrdiff_t>((k + kColumnBlock - 1) / kColumnBlock);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t b = 0; b < nblocks; ++b) {
    const std::size_t first = static_cast<std::size_t>(b) * kColumnBlock;
    const std::size_t last = std::min(k, first + kColumnBlock);
    for (std::size_t i = 0; i < n; ++i) {
      const float* row = m.values.data() + i * k;
      for (std::size_t c = first; c < last; ++c) out[c * n + i] = row[c];
    }
    thread_local std::vector<std::uint32_t> a, b;
    for (std::size_t c = first; c < last; ++c) radix_sort(out.subspan(c * n, n), a, b);
  }
}

void filter_any(MatrixView m, FloatInterval range, ClassId first, ClassId last,
                std::span<std::uint8_t> pass) {
  const auto rows = static_cast<std::ptrdiff_t>(m.rows());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < rows; ++i) {
    const float* row = m.values.data() + static_cast<std::size_t>(i) * m.num_classes;
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

void histograms_from_sorted(std::span<const float> sorted, std::size_t rows,
                            std::size_t num_classes, const BinTable& bins,
                            std::span<std::uint64_t> out) {
  const auto nbins = static_cast<std::size_t>(bins.count());
  const auto ncls = static_cast<std::ptrdiff_t>(num_classes);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t c = 0; c < ncls; ++c) {
    auto col = sorted.subspan(static_cast<std::size_t>(c) * rows, rows);
    std::uint64_t* hist = out.data() + static_cast<std::size_t>(c) * nbins;
    // at_least = number of values landing in bin >= k
    std::uint64_t prev = rows;
    for (std::size_t k = 1; k < nbins; ++k) {
      auto it = std::lower_bound(col.begin(), col.end(), bins.edge(static_cast<int>(k)));
      auto at_least = static_cast<std::uint64_t>(col.end() - it);
      hist[k - 1] = prev - at_least;
      prev = at_least;
    }
    hist[nbins - 1] = prev;
  }
}

}  // namespace classview::kernels::parallel
