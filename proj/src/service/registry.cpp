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

#include "classview/service/registry.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <random>

#include "classview/ingest/snapshot.hpp"
#include "classview/service/render.hpp"

namespace classview::service {

std::string utc_timestamp() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Registry::Registry(std::optional<std::filesystem::path> snapshot_dir)
    : snapshot_dir_(std::move(snapshot_dir)), salt_(std::random_device{}()) {
  if (snapshot_dir_) std::filesystem::create_directories(*snapshot_dir_);
}

std::string Registry::next_id() {
  // caller holds mutex_
  ++sequence_;
  char buf[48];
  std::snprintf(buf, sizeof buf, "ds%llu-%08llx", static_cast<unsigned long long>(sequence_),
                static_cast<unsigned long long>((salt_ * 0x9e3779b97f4a7c15ULL + sequence_) >> 32));
  return buf;
}

std::shared_ptr<const DatasetEntry> Registry::add(std::string name, Dataset dataset) {
  DatasetEntry entry;
  entry.name = std::move(name);
  entry.created_at = utc_timestamp();
  entry.data = std::make_shared<const Dataset>(std::move(dataset));
  {
    std::lock_guard lock(mutex_);
    entry.dataset_id = next_id();
    entry.sequence = sequence_;
  }
  if (snapshot_dir_) {
    auto path = *snapshot_dir_ / (entry.dataset_id + ".mcv");
    ingest::save_snapshot(*entry.data, path);
    std::ofstream meta(*snapshot_dir_ / (entry.dataset_id + ".meta.json"));
    meta << body(Json{{"name", entry.name}, {"created_at", entry.created_at}});
  }
  return publish(std::move(entry));
}

std::shared_ptr<const DatasetEntry> Registry::publish(DatasetEntry entry) {
  auto shared = std::make_shared<const DatasetEntry>(std::move(entry));
  std::lock_guard lock(mutex_);
  entries_[shared->dataset_id] = shared;
  return shared;
}

std::shared_ptr<const DatasetEntry> Registry::get(const std::string& dataset_id) const {
  std::lock_guard lock(mutex_);
  auto it = entries_.find(dataset_id);
  return it == entries_.end() ? nullptr : it->second;
}

bool Registry::remove(const std::string& dataset_id) {
  {
    std::lock_guard lock(mutex_);
    if (entries_.erase(dataset_id) == 0) return false;
  }
  if (snapshot_dir_) {
    std::error_code ec;
    auto path = *snapshot_dir_ / (dataset_id + ".mcv");
    auto sidecars = ingest::snapshot_sidecars(path);
    std::filesystem::remove(path, ec);
    std::filesystem::remove(sidecars.labels, ec);
    std::filesystem::remove(sidecars.images, ec);
    std::filesystem::remove(*snapshot_dir_ / (dataset_id + ".meta.json"), ec);
  }
  return true;
}

std::vector<std::shared_ptr<const DatasetEntry>> Registry::list() const {
  std::vector<std::shared_ptr<const DatasetEntry>> out;
  {
    std::lock_guard lock(mutex_);
    for (const auto& [id, entry] : entries_) out.push_back(entry);
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a->sequence > b->sequence; });
  return out;
}

std::size_t Registry::size() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

std::size_t Registry::load_snapshots() {
  if (!snapshot_dir_) return 0;
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(*snapshot_dir_)) {
    if (e.is_regular_file() && e.path().extension() == ".mcv") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::size_t loaded = 0;
  for (const auto& path : files) {
    DatasetEntry entry;
    entry.dataset_id = path.stem().string();
    entry.name = entry.dataset_id;
    entry.created_at = utc_timestamp();
    if (std::ifstream meta(*snapshot_dir_ / (entry.dataset_id + ".meta.json")); meta) {
      auto j = Json::parse(meta, nullptr, false);
      if (j.is_object()) {
        entry.name = j.value("name", entry.name);
        entry.created_at = j.value("created_at", entry.created_at);
      }
    }
    entry.data = std::make_shared<const Dataset>(ingest::load_snapshot(path));
    {
      std::lock_guard lock(mutex_);
      entry.sequence = ++sequence_;
    }
    publish(std::move(entry));
    ++loaded;
  }
  return loaded;
}

}  // namespace classview::service
