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

#include "classview/analytics/quantize.hpp"

#include <charconv>
#include <cmath>
#include <limits>

#include "classview/error.hpp"

namespace classview {

double decimal_value(float f) {
  if (!std::isfinite(f)) return static_cast<double>(f);
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, f);
  double out = 0.0;
  std::from_chars(buf, res.ptr, out);
  return out;
}

namespace {

constexpr float kInf = std::numeric_limits<float>::infinity();

float next_down(float f) { return std::nextafter(f, -kInf); }
float next_up(float f) { return std::nextafter(f, kInf); }

// Smallest float f with pred(f) true, for pred monotone false->true in f,
// searching outward from a nearby starting point.
template <typename Pred>
float lowest_satisfying(float start, Pred pred) {
  float f = start;
  if (pred(f)) {
    while (std::isfinite(f) && pred(next_down(f))) f = next_down(f);
    return f;
  }
  while (std::isfinite(f) && !pred(f)) f = next_up(f);
  return f;
}

}  // namespace

float lowest_float_at_least(double x) {
  if (std::isnan(x)) throw Error(ErrorCode::InvalidArgument, "NaN bound");
  if (x > std::numeric_limits<float>::max()) return kInf;
  if (x < -std::numeric_limits<float>::max()) return -kInf;
  return lowest_satisfying(static_cast<float>(x),
                           [x](float f) { return decimal_value(f) >= x; });
}

float highest_float_at_most(double x) {
  if (std::isnan(x)) throw Error(ErrorCode::InvalidArgument, "NaN bound");
  if (x > std::numeric_limits<float>::max()) return kInf;
  if (x < -std::numeric_limits<float>::max()) return -kInf;
  // The largest float <= x is one below the smallest float > x.
  float above = lowest_satisfying(static_cast<float>(x),
                                  [x](float f) { return decimal_value(f) > x; });
  return next_down(above);
}

FloatInterval FloatInterval::from_decimal(double lo, double hi) {
  return {lowest_float_at_least(lo), highest_float_at_most(hi)};
}

int bin_index(double p, int n) {
  double scaled = std::floor(p * static_cast<double>(n) + 1e-9);
  if (scaled < 0.0) return 0;
  if (scaled > static_cast<double>(n - 1)) return n - 1;
  return static_cast<int>(scaled);
}

BinTable::BinTable(int n) : count_(n), edges_(static_cast<std::size_t>(n > 0 ? n : 1)) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "bin count must be >= 1");
  edges_[0] = -kInf;
  for (int k = 1; k < n; ++k) {
    float start = static_cast<float>(static_cast<double>(k) / n);
    edges_[k] = lowest_satisfying(
        start, [k, n](float f) { return bin_index(decimal_value(f), n) >= k; });
  }
}

}  // namespace classview
