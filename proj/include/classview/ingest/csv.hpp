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

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "classview/analytics/dataset.hpp"
#include "classview/analytics/types.hpp"

namespace classview::ingest {

struct ParseOptions {
  /// When set, the header must declare exactly this many probability columns.
  std::optional<std::size_t> expected_classes;
  double prob_sum_tolerance = kDefaultProbSumTolerance;
  std::size_t max_classes = 10'000;
  std::size_t max_instances = 10'000'000;
};

/// Predictions CSV: `instance_id,true_class,p0,...,p{K-1}`. LF or CRLF line
/// endings; blank lines are skipped. Fails on the first bad line with an
/// Error carrying its 1-based line number. Probabilities are range- and
/// sum-checked as decimals, then stored as 32-bit floats.
PredictionTable parse_predictions(std::istream& in, const ParseOptions& options = {});

/// Labels CSV: `class_id,label,hierarchy`, hierarchy "/"-separated root first.
std::vector<LabelEntry> parse_labels(std::istream& in);

/// Image manifest CSV: `instance_id,image_url`. An empty stream is an empty map.
ImageManifest parse_image_manifest(std::istream& in);

void write_predictions(std::ostream& out, const PredictionTable& table);
void write_labels(std::ostream& out, std::span<const LabelEntry> labels);
void write_image_manifest(std::ostream& out, const ImageManifest& images);

}  // namespace classview::ingest
