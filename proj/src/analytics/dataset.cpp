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

#include "classview/analytics/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "classview/analytics/kernels.hpp"
#include "classview/error.hpp"

namespace classview {

ConfusionMatrix::ConfusionMatrix(std::size_t num_classes, std::vector<std::uint64_t> cells)
    : num_classes_(num_classes), cells_(std::move(cells)) {
  if (cells_.size() != num_classes_ * num_classes_) {
    throw Error(ErrorCode::InvalidArgument, "confusion matrix must be K x K");
  }
}

std::uint64_t ConfusionMatrix::row_sum(ClassId c) const {
  auto first = cells_.begin() + static_cast<std::ptrdiff_t>(c * num_classes_);
  return std::accumulate(first, first + static_cast<std::ptrdiff_t>(num_classes_),
                         std::uint64_t{0});
}

std::uint64_t ConfusionMatrix::column_sum(ClassId c) const {
  std::uint64_t sum = 0;
  for (std::size_t r = 0; r < num_classes_; ++r) sum += cells_[r * num_classes_ + c];
  return sum;
}

std::uint64_t ConfusionMatrix::total() const {
  return std::accumulate(cells_.begin(), cells_.end(), std::uint64_t{0});
}

std::uint64_t ConfusionMatrix::trace() const {
  std::uint64_t sum = 0;
  for (std::size_t c = 0; c < num_classes_; ++c) sum += cells_[c * num_classes_ + c];
  return sum;
}

std::vector<std::vector<std::uint64_t>> ConfusionMatrix::rows() const {
  std::vector<std::vector<std::uint64_t>> out(num_classes_);
  for (std::size_t r = 0; r < num_classes_; ++r) {
    auto first = cells_.begin() + static_cast<std::ptrdiff_t>(r * num_classes_);
    out[r].assign(first, first + static_cast<std::ptrdiff_t>(num_classes_));
  }
  return out;
}

std::string default_label(ClassId c) { return "class-" + std::to_string(c); }

std::vector<LabelEntry> Dataset::explicit_labels() const {
  std::vector<LabelEntry> out;
  for (std::size_t c = 0; c < labels_.size(); ++c) {
    if (label_given_[c]) out.push_back(labels_[c]);
  }
  return out;
}

std::string Dataset::image_url(InstanceIndex i) const {
  auto it = images_.find(records_.id(i));
  return it == images_.end() ? std::string(kPlaceholderImageUrl) : it->second;
}

std::optional<InstanceIndex> Dataset::find(std::string_view instance_id) const {
  auto it = std::lower_bound(id_order_.begin(), id_order_.end(), instance_id,
                             [this](InstanceIndex i, std::string_view key) {
                               return records_.id(i) < key;
                             });
  if (it == id_order_.end() || records_.id(*it) != instance_id) return std::nullopt;
  return *it;
}

std::span<const InstanceIndex> Dataset::members(ClassId c) const {
  return std::span<const InstanceIndex>(members_).subspan(
      member_offsets_[c], member_offsets_[c + 1] - member_offsets_[c]);
}

std::span<const InstanceIndex> Dataset::predicted_members(ClassId c) const {
  return std::span<const InstanceIndex>(predicted_members_)
      .subspan(predicted_offsets_[c], predicted_offsets_[c + 1] - predicted_offsets_[c]);
}

std::span<const float> Dataset::sorted_column(ClassId c) const {
  return std::span<const float>(sorted_columns_).subspan(c * size(), size());
}

namespace {

void validate_records(const PredictionTable& records, const BuildOptions& options) {
  const std::size_t k = records.num_classes();
  // float quantization may move the sum by up to half an ulp per term
  const double tolerance = options.prob_sum_tolerance + static_cast<double>(k) * 0x1p-24;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (records.true_class(i) >= k) {
      throw Error(ErrorCode::TrueClassOutOfRange,
                  "record '" + std::string(records.id(i)) + "' has true class " +
                      std::to_string(records.true_class(i)) + " >= K");
    }
    double sum = 0.0;
    for (float p : records.probs(i)) {
      if (!std::isfinite(p) || p < 0.0f || p > 1.0f) {
        throw Error(ErrorCode::InvalidRecord,
                    "record '" + std::string(records.id(i)) + "' has a probability outside [0,1]");
      }
      sum += p;
    }
    if (options.check_sums && std::abs(sum - 1.0) > tolerance) {
      throw Error(ErrorCode::InvalidRecord, "record '" + std::string(records.id(i)) +
                                                "' probabilities sum to " + std::to_string(sum));
    }
  }
}

// Counting sort of `order` into K buckets keyed by key[i]; stable, so bucket
// contents keep the order of `order`.
void bucket(std::span<const InstanceIndex> order, std::span<const ClassId> key, std::size_t k,
            std::vector<std::size_t>& offsets, std::vector<InstanceIndex>& out) {
  offsets.assign(k + 1, 0);
  for (InstanceIndex i : order) ++offsets[key[i] + 1];
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  out.resize(order.size());
  std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
  for (InstanceIndex i : order) out[cursor[key[i]]++] = i;
}

}  // namespace

Dataset build_dataset(PredictionTable records, std::vector<LabelEntry> labels,
                      ImageManifest images, const BuildOptions& options) {
  const std::size_t k = records.num_classes();
  const std::size_t n = records.size();
  if (n == 0) throw Error(ErrorCode::EmptyDataset, "dataset has no instances");
  if (k < 2) throw Error(ErrorCode::InvalidClassCount, "dataset needs at least 2 classes");
  if (n > std::numeric_limits<InstanceIndex>::max()) {
    throw Error(ErrorCode::LimitExceeded, "too many instances");
  }
  validate_records(records, options);

  Dataset d;
  d.records_ = std::move(records);
  const auto& rec = d.records_;

  d.id_order_.resize(n);
  std::iota(d.id_order_.begin(), d.id_order_.end(), InstanceIndex{0});
  std::sort(d.id_order_.begin(), d.id_order_.end(),
            [&rec](InstanceIndex a, InstanceIndex b) { return rec.id(a) < rec.id(b); });
  for (std::size_t r = 1; r < n; ++r) {
    if (rec.id(d.id_order_[r - 1]) == rec.id(d.id_order_[r])) {
      throw Error(ErrorCode::DuplicateInstanceId,
                  "duplicate instance id '" + std::string(rec.id(d.id_order_[r])) + "'");
    }
  }
  d.id_rank_.resize(n);
  for (std::size_t r = 0; r < n; ++r) d.id_rank_[d.id_order_[r]] = static_cast<std::uint32_t>(r);

  const kernels::MatrixView matrix{rec.matrix(), k};
  d.predicted_.resize(n);
  d.max_pred_.resize(n);
  kernels::parallel::top1(matrix, d.predicted_, d.max_pred_);

  std::vector<std::uint64_t> cells(k * k);
  kernels::parallel::confusion(rec.true_classes(), d.predicted_, k, cells);
  d.confusion_ = ConfusionMatrix(k, std::move(cells));

  bucket(d.id_order_, rec.true_classes(), k, d.member_offsets_, d.members_);
  bucket(d.id_order_, d.predicted_, k, d.predicted_offsets_, d.predicted_members_);

  d.summaries_.resize(k);
  for (std::size_t c = 0; c < k; ++c) {
    auto cls = static_cast<ClassId>(c);
    ClassSummary& s = d.summaries_[c];
    s.class_id = cls;
    s.support = d.confusion_.row_sum(cls);
    s.correct = d.confusion_.at(cls, cls);
    s.outbound = s.support - s.correct;
    s.inbound = d.confusion_.column_sum(cls) - s.correct;
    s.is_empty = s.support == 0;
    double sum = 0.0;
    for (InstanceIndex i : d.members(cls)) sum += d.max_pred_[i];
    s.mean_max_pred = s.is_empty ? 0.0 : sum / static_cast<double>(s.support);
  }

  d.sorted_columns_.resize(n * k);
  kernels::parallel::sorted_columns(matrix, d.sorted_columns_);

  d.labels_.resize(k);
  d.label_given_.assign(k, false);
  for (std::size_t c = 0; c < k; ++c) {
    d.labels_[c] = LabelEntry{static_cast<ClassId>(c), default_label(static_cast<ClassId>(c)), {}};
  }
  for (auto& entry : labels) {
    if (entry.class_id >= k) {
      throw Error(ErrorCode::ClassOutOfRange,
                  "label for class " + std::to_string(entry.class_id) + " but K=" +
                      std::to_string(k));
    }
    if (d.label_given_[entry.class_id]) {
      throw Error(ErrorCode::DuplicateClassId,
                  "duplicate label for class " + std::to_string(entry.class_id));
    }
    d.label_given_[entry.class_id] = true;
    d.labels_[entry.class_id] = std::move(entry);
  }
  d.images_ = std::move(images);
  return d;
}

}  // namespace classview
