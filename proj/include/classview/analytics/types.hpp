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
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace classview {

/// Dense class index in [0, K).
using ClassId = std::uint32_t;
/// Position of an instance in ingest order.
using InstanceIndex = std::uint32_t;

inline constexpr std::size_t kWindowCap = 50;
inline constexpr std::size_t kDefaultWindowWidth = 10;
inline constexpr std::size_t kDefaultPolylineLimit = 2000;
inline constexpr std::size_t kDefaultExampleCap = 50;
inline constexpr double kDefaultProbSumTolerance = 1e-3;
inline constexpr int kMaxColorBins = 10;

/// One classified instance, owning its probability vector.
struct PredictionRecord {
  std::string instance_id;
  ClassId true_class = 0;
  std::vector<float> probs;

  friend bool operator==(const PredictionRecord&, const PredictionRecord&) = default;
};

/// Columnar store of prediction records sharing one class count. The
/// probabilities live in a single row-major N x K float matrix.
class PredictionTable {
 public:
  PredictionTable() = default;
  explicit PredictionTable(std::size_t num_classes) : num_classes_(num_classes) {}
  /// Adopts pre-filled columns; probs must hold ids.size() * num_classes values.
  PredictionTable(std::size_t num_classes, std::vector<std::string> ids,
                  std::vector<ClassId> true_classes, std::vector<float> probs);

  std::size_t num_classes() const noexcept { return num_classes_; }
  std::size_t size() const noexcept { return true_classes_.size(); }
  bool empty() const noexcept { return true_classes_.empty(); }

  void reserve(std::size_t n);
  /// Throws InconsistentVectorLength when probs.size() != num_classes().
  void push_back(std::string instance_id, ClassId true_class,
                 std::span<const float> probs);
  void push_back(const PredictionRecord& record);

  std::string_view id(std::size_t i) const { return ids_[i]; }
  ClassId true_class(std::size_t i) const { return true_classes_[i]; }
  std::span<const float> probs(std::size_t i) const {
    return {probs_.data() + i * num_classes_, num_classes_};
  }
  PredictionRecord record(std::size_t i) const;

  const std::vector<std::string>& ids() const noexcept { return ids_; }
  const std::vector<ClassId>& true_classes() const noexcept { return true_classes_; }
  std::span<const float> matrix() const noexcept { return probs_; }

  friend bool operator==(const PredictionTable&, const PredictionTable&) = default;

 private:
  std::size_t num_classes_ = 0;
  std::vector<std::string> ids_;
  std::vector<ClassId> true_classes_;
  std::vector<float> probs_;
};

/// Display name and ancestor path (root first) of one class.
struct LabelEntry {
  ClassId class_id = 0;
  std::string label;
  std::vector<std::string> hierarchy;

  friend bool operator==(const LabelEntry&, const LabelEntry&) = default;
};

struct ClassSummary {
  ClassId class_id = 0;
  std::uint64_t support = 0;
  std::uint64_t correct = 0;
  std::uint64_t outbound = 0;
  std::uint64_t inbound = 0;
  double mean_max_pred = 0.0;
  bool is_empty = true;

  friend bool operator==(const ClassSummary&, const ClassSummary&) = default;
};

enum class SortKey { Index, Correct, Inbound, Outbound, MeanMax };
enum class SortOrder { Asc, Desc };

struct SortSpec {
  SortKey key = SortKey::Index;
  SortOrder order = SortOrder::Asc;
};

std::string_view to_string(SortKey key) noexcept;
std::string_view to_string(SortOrder order) noexcept;
std::optional<SortKey> parse_sort_key(std::string_view text) noexcept;
std::optional<SortOrder> parse_sort_order(std::string_view text) noexcept;

/// Inclusive prediction-value range. An instance passes when at least one
/// coordinate in scope lies inside it.
struct FilterSpec {
  double pred_min = 0.0;
  double pred_max = 1.0;
};

/// n equal-width bins over [0,1], top edge closed.
struct ColorBins {
  int count = 10;
};

/// Group 1 inside [lo, hi], group 0 outside.
struct ColorThreshold {
  double lo = 0.0;
  double hi = 1.0;
};

using ColorSpec = std::variant<ColorBins, ColorThreshold>;

/// Throws InvalidArgument on out-of-range parameters.
void validate(const FilterSpec& filter);
void validate(const ColorSpec& color);

enum class WindowMembership {
  TrueClass,           ///< true class inside the window
  TrueOrPredicted,     ///< true or top-1 class inside the window
};

enum class FilterScope {
  AllClasses,  ///< any of the K coordinates
  Window,      ///< only the coordinates of the window classes
};

struct WindowOptions {
  FilterSpec filter;
  ColorSpec color = ColorBins{10};
  std::size_t limit = kDefaultPolylineLimit;
  WindowMembership membership = WindowMembership::TrueClass;
  FilterScope scope = FilterScope::AllClasses;
};

struct Polyline {
  InstanceIndex instance = 0;
  std::string instance_id;
  ClassId true_class = 0;
  std::vector<float> values;  ///< probs[from..to]
  int color_group = 0;
};

struct WindowSlice {
  ClassId from = 0;
  ClassId to = 0;
  std::vector<Polyline> instances;
  std::vector<ClassSummary> doughnuts;
  std::uint64_t total_matching = 0;
};

struct Histogram {
  ClassId class_id = 0;
  std::vector<std::uint64_t> bins;
};

/// Misclassification flows restricted to a class selection.
struct ChordFlows {
  std::vector<ClassId> classes;
  std::vector<std::uint64_t> flows;                  ///< |S| x |S|, row-major
  std::vector<std::vector<std::string>> examples;    ///< per ordered pair, row-major

  std::size_t size() const noexcept { return classes.size(); }
  std::uint64_t flow(std::size_t i, std::size_t j) const { return flows[i * size() + j]; }
  const std::vector<std::string>& examples_for(std::size_t i, std::size_t j) const {
    return examples[i * size() + j];
  }
};

}  // namespace classview
