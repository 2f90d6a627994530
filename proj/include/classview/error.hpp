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

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace classview {

enum class ErrorCode {
  // dataset construction
  EmptyDataset,
  InvalidClassCount,
  DuplicateInstanceId,
  InconsistentVectorLength,
  InvalidRecord,
  // queries
  ClassOutOfRange,
  InvalidRange,
  WindowTooLarge,
  EmptySelection,
  DuplicateClassInSelection,
  InvalidArgument,
  // text ingest
  MalformedHeader,
  MalformedRow,
  RowArityMismatch,
  NonFiniteValue,
  ProbabilityOutOfRange,
  SumTolerance,
  TrueClassOutOfRange,
  DuplicateClassId,
  LimitExceeded,
  // snapshots
  BadMagic,
  UnsupportedVersion,
  TruncatedStream,
  ChecksumMismatch,
  // generator
  InvalidSpec,
  Io,
};

std::string_view to_string(ErrorCode code) noexcept;

/// The single exception type thrown by the library. Text-ingest errors carry
/// the 1-based line number of the offending input line.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> line = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> line() const noexcept { return line_; }
  /// Message without the line prefix that what() carries.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
  std::optional<std::size_t> line_;
};

}  // namespace classview
