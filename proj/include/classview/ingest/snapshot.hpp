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

// Binary snapshot layout, little-endian throughout:
//
//   "MCV1"            4 bytes magic
//   version           u16 (currently 1)
//   K                 u32
//   N                 u64
//   N records         id length u16, id bytes (UTF-8), true class u32,
//                     K x IEEE-754 binary32 probabilities
//   confusion matrix  K x K u64, row-major (row = true class)
//   checksum          u64 FNV-1a (64-bit) over every preceding byte
//
// Labels and image manifests are not part of the snapshot; they travel as
// sidecar CSV files next to it (see snapshot_sidecars()).

#include <cstdint>
#include <filesystem>
#include <iosfwd>

#include "classview/analytics/dataset.hpp"

namespace classview::ingest {

inline constexpr std::uint16_t kSnapshotVersion = 1;

/// 64-bit FNV-1a, streaming.
class Fnv1a64 {
 public:
  void update(const void* data, std::size_t size) noexcept;
  std::uint64_t digest() const noexcept { return state_; }

 private:
  std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

void write_snapshot(const Dataset& d, std::ostream& out);

/// Throws BadMagic, UnsupportedVersion, TruncatedStream or ChecksumMismatch;
/// record validation errors from build_dataset propagate unchanged.
Dataset read_snapshot(std::istream& in, std::vector<LabelEntry> labels = {},
                      ImageManifest images = {});

struct SnapshotSidecars {
  std::filesystem::path labels;
  std::filesystem::path images;
};

/// `x.mcv` -> `x.labels.csv`, `x.images.csv`.
SnapshotSidecars snapshot_sidecars(const std::filesystem::path& snapshot);

/// Writes the snapshot plus sidecars for any labels or images it carries.
void save_snapshot(const Dataset& d, const std::filesystem::path& path);
/// Reads the snapshot and whichever sidecars exist.
Dataset load_snapshot(const std::filesystem::path& path);

}  // namespace classview::ingest
