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

#include "classview/ingest/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "classview/error.hpp"

namespace classview::ingest {

namespace {

// Smallest gap between the target mass and the runner-up.
constexpr double kMinGap = 0.02;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform in [0, 1) from the top 53 bits; engine-defined, not library-defined.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1p-53; }

std::size_t below(std::mt19937_64& rng, std::size_t n) {
  return static_cast<std::size_t>(unit(rng) * static_cast<double>(n));
}

std::string instance_id(std::size_t i, std::size_t width) {
  std::string digits = std::to_string(i);
  return "i" + std::string(width - digits.size(), '0') + digits;
}

}  // namespace

void validate(const SynthSpec& spec) {
  if (spec.num_classes < 2) throw Error(ErrorCode::InvalidSpec, "need at least 2 classes");
  if (spec.num_instances < 1) throw Error(ErrorCode::InvalidSpec, "need at least 1 instance");
  if (!(spec.accuracy > 0.0 && spec.accuracy <= 1.0)) {
    throw Error(ErrorCode::InvalidSpec, "accuracy must lie in (0,1]");
  }
  if (spec.confusion_spread < 1 || spec.confusion_spread > spec.num_classes - 1) {
    throw Error(ErrorCode::InvalidSpec, "confusion spread must lie in [1, K-1]");
  }
  if (!(spec.concentration > 0.0) || !std::isfinite(spec.concentration)) {
    throw Error(ErrorCode::InvalidSpec, "concentration must be positive");
  }
}

PredictionTable synthesize(const SynthSpec& spec) {
  validate(spec);
  const std::size_t k = spec.num_classes;
  const std::size_t n = spec.num_instances;
  const std::size_t width = std::to_string(n - 1).size();

  std::vector<std::string> ids(n);
  std::vector<ClassId> truth(n);
  std::vector<float> probs(n * k);

#pragma omp parallel
  {
    std::vector<double> weights(k);
#pragma omp for schedule(static)
    for (std::ptrdiff_t ii = 0; ii < static_cast<std::ptrdiff_t>(n); ++ii) {
      const auto i = static_cast<std::size_t>(ii);
      std::mt19937_64 rng(splitmix64(spec.seed ^ splitmix64(i)));
      const std::size_t true_class = below(rng, k);
      std::size_t target = true_class;
      if (unit(rng) >= spec.accuracy) {
        target = (true_class + 1 + below(rng, spec.confusion_spread)) % k;
      }

      double total = 0.0;
      double largest = 0.0;
      for (std::size_t j = 0; j < k; ++j) {
        if (j == target) {
          weights[j] = 0.0;
          continue;
        }
        weights[j] = -std::log1p(-unit(rng));
        total += weights[j];
        largest = std::max(largest, weights[j]);
      }
      // With runner-up share r of the remaining mass, any target mass
      // m = f + (1 - f) * s with f = r / (1 + r) beats the runner-up by s.
      const double runner_share = total > 0.0 ? largest / total : 0.0;
      const double floor = runner_share / (1.0 + runner_share);
      const double sharp = kMinGap + (1.0 - kMinGap) * std::pow(unit(rng), 1.0 / spec.concentration);
      const double mass = floor + (1.0 - floor) * sharp;

      float* row = probs.data() + i * k;
      double rest = 0.0;
      for (std::size_t j = 0; j < k; ++j) {
        if (j == target) continue;
        double p = total > 0.0 ? (1.0 - mass) * weights[j] / total : 0.0;
        row[j] = static_cast<float>(p);
        rest += p;
      }
      row[target] = static_cast<float>(1.0 - rest);
      ids[i] = instance_id(i, width);
      truth[i] = static_cast<ClassId>(true_class);
    }
  }
  return PredictionTable(k, std::move(ids), std::move(truth), std::move(probs));
}

}  // namespace classview::ingest
