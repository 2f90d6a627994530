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
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "classview/analytics/dataset.hpp"

namespace classview::service {

struct DatasetEntry {
  std::string dataset_id;
  std::string name;
  std::string created_at;  ///< ISO-8601 UTC
  std::uint64_t sequence = 0;
  std::shared_ptr<const Dataset> data;
};

/// Thread-safe map of published datasets. Entries are immutable; readers
/// holding a shared_ptr keep a dataset alive after it is removed.
class Registry {
 public:
  /// With a directory, every added dataset is also saved there as
  /// `<dataset_id>.mcv` plus sidecars, and removals delete those files.
  explicit Registry(std::optional<std::filesystem::path> snapshot_dir = std::nullopt);

  std::shared_ptr<const DatasetEntry> add(std::string name, Dataset dataset);
  std::shared_ptr<const DatasetEntry> get(const std::string& dataset_id) const;
  bool remove(const std::string& dataset_id);
  /// Newest first.
  std::vector<std::shared_ptr<const DatasetEntry>> list() const;
  std::size_t size() const;

  /// Loads every `*.mcv` in the snapshot directory; returns how many loaded.
  std::size_t load_snapshots();

 private:
  std::shared_ptr<const DatasetEntry> publish(DatasetEntry entry);
  std::string next_id();

  std::optional<std::filesystem::path> snapshot_dir_;
  mutable std::mutex mutex_;
  std::map<std::string, std::shared_ptr<const DatasetEntry>> entries_;
  std::uint64_t sequence_ = 0;
  std::uint64_t salt_;
};

std::string utc_timestamp();

}  // namespace classview::service
