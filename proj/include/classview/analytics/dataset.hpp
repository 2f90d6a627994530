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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "classview/analytics/types.hpp"

namespace classview {

/// Instance id -> image URL.
using ImageManifest = std::map<std::string, std::string, std::less<>>;

inline constexpr std::string_view kPlaceholderImageUrl = "/placeholder.svg";

/// K x K counts, row = true class, column = top-1 class.
class ConfusionMatrix {
 public:
  ConfusionMatrix() = default;
  ConfusionMatrix(std::size_t num_classes, std::vector<std::uint64_t> cells);

  std::size_t num_classes() const noexcept { return num_classes_; }
  std::uint64_t at(ClassId truth, ClassId predicted) const {
    return cells_[truth * num_classes_ + predicted];
  }
  std::uint64_t row_sum(ClassId c) const;
  std::uint64_t column_sum(ClassId c) const;
  std::uint64_t total() const;
  std::uint64_t trace() const;
  std::span<const std::uint64_t> cells() const noexcept { return cells_; }
  std::vector<std::vector<std::uint64_t>> rows() const;

  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;

 private:
  std::size_t num_classes_ = 0;
  std::vector<std::uint64_t> cells_;
};

struct BuildOptions {
  double prob_sum_tolerance = kDefaultProbSumTolerance;
  bool check_sums = true;
};

/// Immutable ingested dataset with every derived table the queries need.
/// All const member functions are safe to call concurrently.
class Dataset {
 public:
  Dataset(const Dataset&) = delete;
  Dataset& operator=(const Dataset&) = delete;
  Dataset(Dataset&&) noexcept = default;
  Dataset& operator=(Dataset&&) noexcept = default;

  std::size_t num_classes() const noexcept { return records_.num_classes(); }
  std::size_t size() const noexcept { return records_.size(); }

  const PredictionTable& records() const noexcept { return records_; }
  std::string_view id(InstanceIndex i) const { return records_.id(i); }
  ClassId true_class(InstanceIndex i) const { return records_.true_class(i); }
  std::span<const float> probs(InstanceIndex i) const { return records_.probs(i); }
  ClassId predicted(InstanceIndex i) const { return predicted_[i]; }
  float max_pred(InstanceIndex i) const { return max_pred_[i]; }
  std::span<const ClassId> predictions() const noexcept { return predicted_; }
  std::span<const float> max_preds() const noexcept { return max_pred_; }

  const ConfusionMatrix& confusion() const noexcept { return confusion_; }
  std::span<const ClassSummary> summaries() const noexcept { return summaries_; }

  const LabelEntry& label(ClassId c) const { return labels_[c]; }
  std::span<const LabelEntry> labels() const noexcept { return labels_; }
  /// Labels that were supplied at build time, excluding defaults.
  std::vector<LabelEntry> explicit_labels() const;
  const ImageManifest& images() const noexcept { return images_; }
  std::string image_url(InstanceIndex i) const;

  std::optional<InstanceIndex> find(std::string_view instance_id) const;
  /// All instances in ascending id order.
  std::span<const InstanceIndex> id_order() const noexcept { return id_order_; }
  /// Position of instance i in id_order().
  std::uint32_t id_rank(InstanceIndex i) const { return id_rank_[i]; }
  /// Instances whose true class is c, in ascending id order.
  std::span<const InstanceIndex> members(ClassId c) const;
  /// Instances whose top-1 class is c, in ascending id order.
  std::span<const InstanceIndex> predicted_members(ClassId c) const;
  /// Column c of the probability matrix, ascending.
  std::span<const float> sorted_column(ClassId c) const;
  /// All sorted columns, K blocks of N values.
  std::span<const float> sorted_columns() const noexcept { return sorted_columns_; }

  std::uint64_t total_correct() const { return confusion_.trace(); }
  std::uint64_t total_misclassified() const { return size() - total_correct(); }

 private:
  Dataset() = default;
  friend Dataset build_dataset(PredictionTable, std::vector<LabelEntry>, ImageManifest,
                               const BuildOptions&);

  PredictionTable records_;
  std::vector<ClassId> predicted_;
  std::vector<float> max_pred_;
  ConfusionMatrix confusion_;
  std::vector<ClassSummary> summaries_;
  std::vector<LabelEntry> labels_;
  std::vector<bool> label_given_;
  ImageManifest images_;
  std::vector<InstanceIndex> id_order_;
  std::vector<std::uint32_t> id_rank_;
  std::vector<std::size_t> member_offsets_;
  std::vector<InstanceIndex> members_;
  std::vector<std::size_t> predicted_offsets_;
  std::vector<InstanceIndex> predicted_members_;
  std::vector<float> sorted_columns_;
};

/// Validates the records and derives every table. Throws Error with
/// EmptyDataset, InvalidClassCount, DuplicateInstanceId, InvalidRecord,
/// ClassOutOfRange (label for a class >= K) or DuplicateClassId.
Dataset build_dataset(PredictionTable records, std::vector<LabelEntry> labels = {},
                      ImageManifest images = {}, const BuildOptions& options = {});

std::string default_label(ClassId c);

}  // namespace classview
