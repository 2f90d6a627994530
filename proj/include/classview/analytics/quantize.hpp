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

// Probabilities are stored as 32-bit floats. Every user-facing threshold
// (filter bounds, color bin edges, histogram edges) is defined on the decimal
// value a float prints as, so 0.7f counts as 0.7 rather than 0.69999998807.
// The helpers below translate those decimal rules into exact float
// comparisons once, so the hot loops compare floats only.

#include <vector>

namespace classview {

/// Shortest round-trip decimal representation of f, read back as a double.
double decimal_value(float f);

/// Smallest float whose decimal value is >= x.
float lowest_float_at_least(double x);
/// Largest float whose decimal value is <= x.
float highest_float_at_most(double x);

/// Inclusive float interval equivalent to the decimal interval [lo, hi].
struct FloatInterval {
  float lo;
  float hi;

  static FloatInterval from_decimal(double lo, double hi);
  bool contains(float p) const noexcept { return lo <= p && p <= hi; }
};

/// Literal bin rule on a real value: min(floor(p*n + 1e-9), n-1), floored at 0.
int bin_index(double p, int n);

/// bin_index(decimal_value(p), n) evaluated with precomputed float edges.
class BinTable {
 public:
  explicit BinTable(int n);

  int count() const noexcept { return count_; }
  /// Smallest float landing in bin k, for k in [1, count).
  float edge(int k) const { return edges_[k]; }

  int operator()(float p) const noexcept {
    int g = static_cast<int>(p * static_cast<float>(count_));
    if (g < 0) g = 0;
    if (g > count_ - 1) g = count_ - 1;
    while (g + 1 < count_ && p >= edges_[g + 1]) ++g;
    while (g > 0 && p < edges_[g]) --g;
    return g;
  }

 private:
  int count_;
  std::vector<float> edges_;  // edges_[0] unused
};

}  // namespace classview
