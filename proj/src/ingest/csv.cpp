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

#include "classview/ingest/csv.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <string>
#include <unordered_set>

#include "classview/error.hpp"

namespace classview::ingest {

namespace {

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next non-blank line with any trailing CR removed.
  bool next(std::string_view& line) {
    while (std::getline(in_, buffer_)) {
      ++number_;
      if (!buffer_.empty() && buffer_.back() == '\r') buffer_.pop_back();
      if (buffer_.empty()) continue;
      line = buffer_;
      return true;
    }
    if (in_.bad()) throw Error(ErrorCode::Io, "read failure", number_);
    return false;
  }

  std::size_t number() const noexcept { return number_; }

 private:
  std::istream& in_;
  std::string buffer_;
  std::size_t number_ = 0;
};

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

template <typename T>
bool parse_integer(std::string_view text, T& out) {
  if (text.empty()) return false;
  auto res = std::from_chars(text.data(), text.data() + text.size(), out);
  return res.ec == std::errc() && res.ptr == text.data() + text.size();
}

std::string quoted(std::string_view s) { return "'" + std::string(s) + "'"; }

void check_header(std::string_view actual, std::string_view expected, std::size_t line) {
  if (actual != expected) {
    throw Error(ErrorCode::MalformedHeader,
                "expected header " + quoted(expected) + ", got " + quoted(actual), line);
  }
}

}  // namespace

PredictionTable parse_predictions(std::istream& in, const ParseOptions& options) {
  LineReader reader(in);
  std::string_view line;
  if (!reader.next(line)) throw Error(ErrorCode::MalformedHeader, "missing header", 1);

  const std::size_t header_line = reader.number();
  auto header = split(line, ',');
  if (header.size() < 3 || header[0] != "instance_id" || header[1] != "true_class") {
    throw Error(ErrorCode::MalformedHeader,
                "header must be instance_id,true_class,p0,...,p{K-1}", header_line);
  }
  const std::size_t k = header.size() - 2;
  for (std::size_t j = 0; j < k; ++j) {
    if (header[j + 2] != "p" + std::to_string(j)) {
      throw Error(ErrorCode::MalformedHeader,
                  "column " + std::to_string(j + 3) + " must be p" + std::to_string(j) +
                      ", got " + quoted(header[j + 2]),
                  header_line);
    }
  }
  if (options.expected_classes && *options.expected_classes != k) {
    throw Error(ErrorCode::MalformedHeader,
                "header declares " + std::to_string(k) + " classes, expected " +
                    std::to_string(*options.expected_classes),
                header_line);
  }
  if (k > options.max_classes) {
    throw Error(ErrorCode::LimitExceeded,
                "header declares " + std::to_string(k) + " classes, limit is " +
                    std::to_string(options.max_classes),
                header_line);
  }

  PredictionTable table(k);
  std::unordered_set<std::string> seen;
  std::vector<float> probs(k);
  std::vector<std::string_view> fields;
  fields.reserve(k + 2);

  while (reader.next(line)) {
    const std::size_t n = reader.number();
    fields.clear();
    std::size_t start = 0;
    while (true) {
      std::size_t pos = line.find(',', start);
      if (pos == std::string_view::npos) {
        fields.push_back(line.substr(start));
        break;
      }
      fields.push_back(line.substr(start, pos - start));
      start = pos + 1;
    }
    if (fields.size() != k + 2) {
      throw Error(ErrorCode::RowArityMismatch,
                  "expected " + std::to_string(k + 2) + " fields, got " +
                      std::to_string(fields.size()),
                  n);
    }
    if (table.size() >= options.max_instances) {
      throw Error(ErrorCode::LimitExceeded,
                  "more than " + std::to_string(options.max_instances) + " instances", n);
    }
    if (fields[0].empty()) throw Error(ErrorCode::MalformedRow, "empty instance_id", n);
    ClassId true_class = 0;
    if (!parse_integer(fields[1], true_class)) {
      throw Error(ErrorCode::MalformedRow, "true_class " + quoted(fields[1]) + " is not an integer",
                  n);
    }
    if (true_class >= k) {
      throw Error(ErrorCode::TrueClassOutOfRange,
                  "true_class " + std::to_string(true_class) + " outside [0," +
                      std::to_string(k) + ")",
                  n);
    }
    double sum = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      std::string_view tok = fields[j + 2];
      double v = 0.0;
      auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (res.ec == std::errc::result_out_of_range) {
        throw Error(ErrorCode::NonFiniteValue, "p" + std::to_string(j) + " overflows", n);
      }
      if (res.ec != std::errc() || res.ptr != tok.data() + tok.size()) {
        throw Error(ErrorCode::MalformedRow, "p" + std::to_string(j) + " " + quoted(tok) +
                                                 " is not a number",
                    n);
      }
      if (!std::isfinite(v)) {
        throw Error(ErrorCode::NonFiniteValue, "p" + std::to_string(j) + " is not finite", n);
      }
      if (v < 0.0 || v > 1.0) {
        throw Error(ErrorCode::ProbabilityOutOfRange,
                    "p" + std::to_string(j) + "=" + std::string(tok) + " outside [0,1]", n);
      }
      sum += v;
      probs[j] = static_cast<float>(v);
    }
    if (std::abs(sum - 1.0) > options.prob_sum_tolerance) {
      throw Error(ErrorCode::SumTolerance, "probabilities sum to " + std::to_string(sum), n);
    }
    auto [it, inserted] = seen.emplace(fields[0]);
    if (!inserted) {
      throw Error(ErrorCode::DuplicateInstanceId, "duplicate instance_id " + quoted(fields[0]), n);
    }
    table.push_back(*it, true_class, probs);
  }
  return table;
}

std::vector<LabelEntry> parse_labels(std::istream& in) {
  LineReader reader(in);
  std::string_view line;
  if (!reader.next(line)) return {};
  check_header(line, "class_id,label,hierarchy", reader.number());

  std::vector<LabelEntry> out;
  std::unordered_set<ClassId> seen;
  while (reader.next(line)) {
    const std::size_t n = reader.number();
    auto fields = split(line, ',');
    if (fields.size() != 3) {
      throw Error(ErrorCode::MalformedRow,
                  "expected 3 fields, got " + std::to_string(fields.size()), n);
    }
    LabelEntry entry;
    if (!parse_integer(fields[0], entry.class_id)) {
      throw Error(ErrorCode::MalformedRow, "class_id " + quoted(fields[0]) + " is not an integer",
                  n);
    }
    if (fields[1].empty()) throw Error(ErrorCode::MalformedRow, "empty label", n);
    entry.label = std::string(fields[1]);
    if (!fields[2].empty()) {
      for (auto part : split(fields[2], '/')) {
        if (part.empty()) throw Error(ErrorCode::MalformedRow, "empty hierarchy segment", n);
        entry.hierarchy.emplace_back(part);
      }
    }
    if (!seen.insert(entry.class_id).second) {
      throw Error(ErrorCode::DuplicateClassId,
                  "duplicate class_id " + std::to_string(entry.class_id), n);
    }
    out.push_back(std::move(entry));
  }
  return out;
}

ImageManifest parse_image_manifest(std::istream& in) {
  LineReader reader(in);
  std::string_view line;
  ImageManifest out;
  if (!reader.next(line)) return out;
  check_header(line, "instance_id,image_url", reader.number());
  while (reader.next(line)) {
    const std::size_t n = reader.number();
    std::size_t comma = line.find(',');
    if (comma == std::string_view::npos) {
      throw Error(ErrorCode::MalformedRow, "expected instance_id,image_url", n);
    }
    std::string_view id = line.substr(0, comma);
    std::string_view url = line.substr(comma + 1);
    if (id.empty() || url.empty()) {
      throw Error(ErrorCode::MalformedRow, "empty instance_id or image_url", n);
    }
    if (!out.emplace(std::string(id), std::string(url)).second) {
      throw Error(ErrorCode::DuplicateInstanceId, "duplicate instance_id " + quoted(id), n);
    }
  }
  return out;
}

void write_predictions(std::ostream& out, const PredictionTable& table) {
  std::string buf = "instance_id,true_class";
  for (std::size_t j = 0; j < table.num_classes(); ++j) buf += ",p" + std::to_string(j);
  buf += '\n';
  char num[32];
  for (std::size_t i = 0; i < table.size(); ++i) {
    buf += table.id(i);
    buf += ',';
    buf += std::to_string(table.true_class(i));
    for (float p : table.probs(i)) {
      buf += ',';
      auto res = std::to_chars(num, num + sizeof num, p);
      buf.append(num, res.ptr);
    }
    buf += '\n';
    if (buf.size() > (1u << 20)) {
      out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
      buf.clear();
    }
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

void write_labels(std::ostream& out, std::span<const LabelEntry> labels) {
  out << "class_id,label,hierarchy\n";
  for (const auto& e : labels) {
    out << e.class_id << ',' << e.label << ',';
    for (std::size_t h = 0; h < e.hierarchy.size(); ++h) {
      if (h) out << '/';
      out << e.hierarchy[h];
    }
    out << '\n';
  }
}

void write_image_manifest(std::ostream& out, const ImageManifest& images) {
  out << "instance_id,image_url\n";
  for (const auto& [id, url] : images) out << id << ',' << url << '\n';
}

}  // namespace classview::ingest
