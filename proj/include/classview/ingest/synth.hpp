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

#include <cstdint>

#include "classview/analytics/types.hpp"

namespace classview::ingest {

/// Seeded synthetic classifier output. Each instance's true class is uniform
/// over K. With probability `accuracy` the top-1 target is the true class;
/// otherwise it is one of the `confusion_spread` cyclic successors of the
/// true class, uniformly. The target always remains the strict argmax;
/// larger `concentration` pushes its mass towards 1.
struct SynthSpec {
  std::size_t num_classes = 1000;
  std::size_t num_instances = 50'000;
  double accuracy = 0.8;
  std::size_t confusion_spread = 3;
  double concentration = 2.0;
  std::uint64_t seed = 42;
};

/// Throws InvalidSpec.
void validate(const SynthSpec& spec);

/// Deterministic for a fixed spec regardless of thread count. Instance ids
/// are "i" followed by a zero-padded index so id order equals index order.
PredictionTable synthesize(const SynthSpec& spec);

}  // namespace classview::ingest
