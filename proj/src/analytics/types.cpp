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

#include "classview/analytics/types.hpp"

#include <cmath>

#include "classview/error.hpp"

namespace classview {

PredictionTable::PredictionTable(std::size_t num_classes, std::vector<std::string> ids,
                                 std::vector<ClassId> true_classes, std::vector<float> probs)
    : num_classes_(num_classes),
      ids_(std::move(ids)),
      true_classes_(std::move(true_classes)),
      probs_(std::move(probs)) {
  if (true_classes_.size() != ids_.size() || probs_.size() != ids_.size() * num_classes_) {
    throw Error(ErrorCode::InconsistentVectorLength, "column lengths disagree");
  }
}

void PredictionTable::reserve(std::size_t n) {
  ids_.reserve(n);
  true_classes_.reserve(n);
  probs_.reserve(n * num_classes_);
}

void PredictionTable::push_back(std::string instance_id, ClassId true_class,
                                std::span<const float> probs) {
  if (probs.size() != num_classes_) {
    throw Error(ErrorCode::InconsistentVectorLength,
                "record '" + instance_id + "' has " + std::to_string(probs.size()) +
                    " probabilities, expected " + std::to_string(num_classes_));
  }
  ids_.push_back(std::move(instance_id));
  true_classes_.push_back(true_class);
  probs_.insert(probs_.end(), probs.begin(), probs.end());
}

void PredictionTable::push_back(const PredictionRecord& record) {
  push_back(record.instance_id, record.true_class, record.probs);
}

PredictionRecord PredictionTable::record(std::size_t i) const {
  auto p = probs(i);
  return {ids_[i], true_classes_[i], std::vector<float>(p.begin(), p.end())};
}

std::string_view to_string(SortKey key) noexcept {
  switch (key) {
    case SortKey::Index: return "index";
    case SortKey::Correct: return "correct";
    case SortKey::Inbound: return "inbound";
    case SortKey::Outbound: return "outbound";
    case SortKey::MeanMax: return "mean_max";
  }
  return "index";
}

std::string_view to_string(SortOrder order) noexcept {
  return order == SortOrder::Asc ? "asc" : "desc";
}

std::optional<SortKey> parse_sort_key(std::string_view text) noexcept {
  for (auto key : {SortKey::Index, SortKey::Correct, SortKey::Inbound, SortKey::Outbound,
                   SortKey::MeanMax}) {
    if (text == to_string(key)) return key;
  }
  return std::nullopt;
}

std::optional<SortOrder> parse_sort_order(std::string_view text) noexcept {
  if (text == "asc") return SortOrder::Asc;
  if (text == "desc") return SortOrder::Desc;
  return std::nullopt;
}

namespace {

bool unit_interval(double v) { return std::isfinite(v) && v >= 0.0 && v <= 1.0; }

}  // namespace

void validate(const FilterSpec& filter) {
  if (!unit_interval(filter.pred_min) || !unit_interval(filter.pred_max)) {
    throw Error(ErrorCode::InvalidArgument, "prediction filter bounds must lie in [0,1]");
  }
  if (filter.pred_min > filter.pred_max) {
    throw Error(ErrorCode::InvalidArgument, "pred_min exceeds pred_max");
  }
}

void validate(const ColorSpec& color) {
  if (const auto* bins = std::get_if<ColorBins>(&color)) {
    if (bins->count < 1 || bins->count > kMaxColorBins) {
      throw Error(ErrorCode::InvalidArgument, "color bin count must lie in [1,10]");
    }
    return;
  }
  const auto& t = std::get<ColorThreshold>(color);
  if (!unit_interval(t.lo) || !unit_interval(t.hi) || t.lo > t.hi) {
    throw Error(ErrorCode::InvalidArgument, "threshold bounds must satisfy 0 <= lo <= hi <= 1");
  }
}

}  // namespace classview
