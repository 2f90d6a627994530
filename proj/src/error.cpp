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

#include "classview/error.hpp"

namespace classview {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::EmptyDataset: return "EmptyDataset";
    case ErrorCode::InvalidClassCount: return "InvalidClassCount";
    case ErrorCode::DuplicateInstanceId: return "DuplicateInstanceId";
    case ErrorCode::InconsistentVectorLength: return "InconsistentVectorLength";
    case ErrorCode::InvalidRecord: return "InvalidRecord";
    case ErrorCode::ClassOutOfRange: return "ClassOutOfRange";
    case ErrorCode::InvalidRange: return "InvalidRange";
    case ErrorCode::WindowTooLarge: return "WindowTooLarge";
    case ErrorCode::EmptySelection: return "EmptySelection";
    case ErrorCode::DuplicateClassInSelection: return "DuplicateClassInSelection";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::MalformedHeader: return "MalformedHeader";
    case ErrorCode::MalformedRow: return "MalformedRow";
    case ErrorCode::RowArityMismatch: return "RowArityMismatch";
    case ErrorCode::NonFiniteValue: return "NonFiniteValue";
    case ErrorCode::ProbabilityOutOfRange: return "ProbabilityOutOfRange";
    case ErrorCode::SumTolerance: return "SumTolerance";
    case ErrorCode::TrueClassOutOfRange: return "TrueClassOutOfRange";
    case ErrorCode::DuplicateClassId: return "DuplicateClassId";
    case ErrorCode::LimitExceeded: return "LimitExceeded";
    case ErrorCode::BadMagic: return "BadMagic";
    case ErrorCode::UnsupportedVersion: return "UnsupportedVersion";
    case ErrorCode::TruncatedStream: return "TruncatedStream";
    case ErrorCode::ChecksumMismatch: return "ChecksumMismatch";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

namespace {

std::string format_message(const std::string& message,
                           std::optional<std::size_t> line) {
  if (!line) return message;
  return "line " + std::to_string(*line) + ": " + message;
}

}  // namespace

Error::Error(ErrorCode code, const std::string& message,
             std::optional<std::size_t> line)
    : std::runtime_error(format_message(message, line)),
      code_(code),
      detail_(message),
      line_(line) {}

}  // namespace classview
