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

// Shared test fixtures: the six-record, three-class dataset used throughout
// the suites, and a seeded random dataset generator.

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "classview/analytics/dataset.hpp"
#include "classview/analytics/types.hpp"

namespace classview::testing {

inline PredictionTable t6_table() {
  PredictionTable t(3);
  t.push_back({"i0", 0, {0.7f, 0.2f, 0.1f}});
  t.push_back({"i1", 0, {0.3f, 0.6f, 0.1f}});
  t.push_back({"i2", 1, {0.1f, 0.8f, 0.1f}});
  t.push_back({"i3", 1, {0.4f, 0.4f, 0.2f}});
  t.push_back({"i4", 2, {0.2f, 0.3f, 0.5f}});
  t.push_back({"i5", 2, {0.5f, 0.4f, 0.1f}});
  return t;
}

inline const char* t6_csv() {
  return "instance_id,true_class,p0,p1,p2\n"
         "i0,0,0.7,0.2,0.1\n"
         "i1,0,0.3,0.6,0.1\n"
         "i2,1,0.1,0.8,0.1\n"
         "i3,1,0.4,0.4,0.2\n"
         "i4,2,0.2,0.3,0.5\n"
         "i5,2,0.5,0.4,0.1\n";
}

inline Dataset t6() { return build_dataset(t6_table()); }

/// Random valid table. Probabilities are small integer weights normalized,
/// so ties and values on decimal bin edges (0.1, 0.25, 0.5, ...) are common.
/// Ids vary in length and are shuffled so id order differs from ingest order.
inline PredictionTable random_table(std::mt19937_64& rng, std::size_t k, std::size_t n) {
  std::uniform_int_distribution<int> weight(0, 6);
  std::uniform_int_distribution<std::size_t> cls(0, k - 1);
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  PredictionTable t(k);
  std::vector<float> probs(k);
  for (std::size_t r = 0; r < n; ++r) {
    std::vector<int> w(k);
    int total = 0;
    while (total == 0) {
      total = 0;
      for (auto& x : w) {
        x = weight(rng) == 6 ? 10 : weight(rng);
        total += x;
      }
    }
    for (std::size_t j = 0; j < k; ++j) {
      probs[j] = static_cast<float>(static_cast<double>(w[j]) / total);
    }
    t.push_back("x" + std::to_string(order[r]), static_cast<ClassId>(cls(rng)), probs);
  }
  return t;
}

/// Random distinct class selection of size in [1, k].
inline std::vector<ClassId> random_selection(std::mt19937_64& rng, std::size_t k) {
  std::vector<ClassId> all(k);
  for (std::size_t c = 0; c < k; ++c) all[c] = static_cast<ClassId>(c);
  std::shuffle(all.begin(), all.end(), rng);
  std::uniform_int_distribution<std::size_t> size(1, k);
  all.resize(size(rng));
  return all;
}

}  // namespace classview::testing
