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

#include "classview/ingest/snapshot.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "classview/error.hpp"
#include "classview/ingest/csv.hpp"

namespace classview::ingest {

static_assert(std::endian::native == std::endian::little,
              "snapshot encoding assumes a little-endian host");

void Fnv1a64::update(const void* data, std::size_t size) noexcept {
  const auto* bytes = static_cast<const unsigned char*>(data);
  std::uint64_t h = state_;
  for (std::size_t i = 0; i < size; ++i) {
    h ^= bytes[i];
    h *= 0x100000001b3ULL;
  }
  state_ = h;
}

namespace {

constexpr char kMagic[4] = {'M', 'C', 'V', '1'};

class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(out) { buf_.reserve(kChunk); }
  ~Writer() = default;

  template <typename T>
  void put(T value) {
    bytes(&value, sizeof value);
  }
  void bytes(const void* data, std::size_t size) {
    const auto* p = static_cast<const char*>(data);
    buf_.insert(buf_.end(), p, p + size);
    if (buf_.size() >= kChunk) flush();
  }
  void flush() {
    hash_.update(buf_.data(), buf_.size());
    out_.write(buf_.data(), static_cast<std::streamsize>(buf_.size()));
    buf_.clear();
  }
  std::uint64_t digest() {
    flush();
    return hash_.digest();
  }

 private:
  static constexpr std::size_t kChunk = 1 << 20;
  std::ostream& out_;
  std::vector<char> buf_;
  Fnv1a64 hash_;
};

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  void bytes(void* data, std::size_t size, const char* what) {
    in_.read(static_cast<char*>(data), static_cast<std::streamsize>(size));
    if (static_cast<std::size_t>(in_.gcount()) != size) {
      throw Error(ErrorCode::TruncatedStream, std::string("stream ends inside ") + what);
    }
    hash_.update(data, size);
  }
  template <typename T>
  T get(const char* what) {
    T value;
    bytes(&value, sizeof value, what);
    return value;
  }
  std::uint64_t digest() const { return hash_.digest(); }

 private:
  std::istream& in_;
  Fnv1a64 hash_;
};

}  // namespace

void write_snapshot(const Dataset& d, std::ostream& out) {
  Writer w(out);
  const auto& rec = d.records();
  w.bytes(kMagic, sizeof kMagic);
  w.put<std::uint16_t>(kSnapshotVersion);
  w.put<std::uint32_t>(static_cast<std::uint32_t>(d.num_classes()));
  w.put<std::uint64_t>(d.size());
  for (std::size_t i = 0; i < rec.size(); ++i) {
    auto id = rec.id(i);
    if (id.size() > 0xffff) throw Error(ErrorCode::InvalidRecord, "instance id longer than 65535 bytes");
    w.put<std::uint16_t>(static_cast<std::uint16_t>(id.size()));
    w.bytes(id.data(), id.size());
    w.put<std::uint32_t>(rec.true_class(i));
    auto probs = rec.probs(i);
    w.bytes(probs.data(), probs.size_bytes());
  }
  auto cells = d.confusion().cells();
  w.bytes(cells.data(), cells.size_bytes());
  std::uint64_t checksum = w.digest();
  out.write(reinterpret_cast<const char*>(&checksum), sizeof checksum);
  if (!out) throw Error(ErrorCode::Io, "snapshot write failed");
}

Dataset read_snapshot(std::istream& in, std::vector<LabelEntry> labels, ImageManifest images) {
  Reader r(in);
  char magic[4];
  r.bytes(magic, sizeof magic, "magic");
  if (std::memcmp(magic, kMagic, sizeof magic) != 0) {
    throw Error(ErrorCode::BadMagic, "not an MCV1 snapshot");
  }
  auto version = r.get<std::uint16_t>("version");
  if (version != kSnapshotVersion) {
    throw Error(ErrorCode::UnsupportedVersion,
                "snapshot version " + std::to_string(version) + " is not supported");
  }
  const auto k = r.get<std::uint32_t>("class count");
  const auto n = r.get<std::uint64_t>("instance count");

  PredictionTable table(k);
  // the header is untrusted until the checksum passes; cap up-front allocation
  table.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(n, 1 << 16)));
  std::vector<float> probs(k);
  std::string id;
  for (std::uint64_t i = 0; i < n; ++i) {
    auto len = r.get<std::uint16_t>("record");
    id.resize(len);
    r.bytes(id.data(), len, "record");
    auto true_class = r.get<std::uint32_t>("record");
    r.bytes(probs.data(), probs.size() * sizeof(float), "record");
    table.push_back(id, true_class, probs);
  }
  std::vector<std::uint64_t> cells(static_cast<std::size_t>(k) * k);
  r.bytes(cells.data(), cells.size() * sizeof(std::uint64_t), "confusion matrix");
  const std::uint64_t expected = r.digest();
  std::uint64_t stored = 0;
  in.read(reinterpret_cast<char*>(&stored), sizeof stored);
  if (in.gcount() != sizeof stored) throw Error(ErrorCode::TruncatedStream, "stream ends inside checksum");
  if (stored != expected) throw Error(ErrorCode::ChecksumMismatch, "snapshot checksum mismatch");

  Dataset d = build_dataset(std::move(table), std::move(labels), std::move(images));
  if (d.confusion() != ConfusionMatrix(k, std::move(cells))) {
    throw Error(ErrorCode::ChecksumMismatch, "stored confusion matrix disagrees with records");
  }
  return d;
}

SnapshotSidecars snapshot_sidecars(const std::filesystem::path& snapshot) {
  auto base = snapshot;
  base.replace_extension();
  return {base.string() + ".labels.csv", base.string() + ".images.csv"};
}

void save_snapshot(const Dataset& d, const std::filesystem::path& path) {
  {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot open " + path.string() + " for writing");
    write_snapshot(d, out);
  }
  auto sidecars = snapshot_sidecars(path);
  auto labels = d.explicit_labels();
  std::error_code ec;
  if (!labels.empty()) {
    std::ofstream out(sidecars.labels);
    write_labels(out, labels);
  } else {
    std::filesystem::remove(sidecars.labels, ec);
  }
  if (!d.images().empty()) {
    std::ofstream out(sidecars.images);
    write_image_manifest(out, d.images());
  } else {
    std::filesystem::remove(sidecars.images, ec);
  }
}

Dataset load_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  auto sidecars = snapshot_sidecars(path);
  std::vector<LabelEntry> labels;
  ImageManifest images;
  if (std::ifstream lf(sidecars.labels); lf) labels = parse_labels(lf);
  if (std::ifstream mf(sidecars.images); mf) images = parse_image_manifest(mf);
  return read_snapshot(in, std::move(labels), std::move(images));
}

}  // namespace classview::ingest
