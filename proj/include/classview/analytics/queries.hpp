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

#include <span>
#include <variant>
#include <vector>

#include "classview/analytics/dataset.hpp"
#include "classview/analytics/kernels.hpp"
#include "classview/analytics/quantize.hpp"
#include "classview/analytics/types.hpp"

namespace classview {

/// Top-1 class, lowest index on ties.
inline ClassId predicted_class(std::span<const float> probs) noexcept {
  return kernels::argmax(probs);
}
inline ClassId predicted_class(std::span<const double> probs) noexcept {
  return kernels::argmax(probs);
}

/// Throws ClassOutOfRange.
ClassSummary class_summary(const Dataset& d, ClassId c);

/// Permutation of 0..K-1 ordered by the key; ties by ascending class index.
std::vector<ClassId> sort_classes(const Dataset& d, const SortSpec& spec);

/// Instances (ascending id) with at least one coordinate inside the filter
/// range. With FilterScope::Window only classes [first, last] are examined.
std::vector<InstanceIndex> filter_instances(const Dataset& d, const FilterSpec& filter);
std::vector<InstanceIndex> filter_instances(const Dataset& d, const FilterSpec& filter,
                                            ClassId first, ClassId last);

/// Color group of a real prediction value.
int color_group(double p, const ColorSpec& spec);

/// color_group() applied to the decimal value of a stored float.
class ColorRule {
 public:
  explicit ColorRule(const ColorSpec& spec);
  int operator()(float p) const noexcept;
  int groups() const noexcept;

 private:
  std::variant<BinTable, FloatInterval> rule_;
};

/// Detail-view payload for classes [from, to]. Throws InvalidRange,
/// WindowTooLarge, ClassOutOfRange or InvalidArgument.
WindowSlice window_slice(const Dataset& d, ClassId from, ClassId to,
                         const WindowOptions& options = {});

/// Throws EmptySelection, DuplicateClassInSelection or ClassOutOfRange.
ChordFlows chord_flows(const Dataset& d, std::span<const ClassId> selection,
                       std::size_t example_cap = kDefaultExampleCap);

/// Throws ClassOutOfRange or InvalidArgument (bins < 1).
Histogram prediction_histogram(const Dataset& d, ClassId c, int bins);
/// One histogram per class, index order.
std::vector<Histogram> prediction_histograms(const Dataset& d, int bins);

}  // namespace classview
