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

// JSON renderings shared by the HTTP API and the CLI, so both emit the same
// bytes for the same query. Field names are snake_case. Probabilities are
// emitted as the shortest decimal that round-trips the stored 32-bit float.

#include <optional>
#include <span>
#include <string>

#include <json.hpp>

#include "classview/analytics/dataset.hpp"
#include "classview/analytics/types.hpp"

namespace classview::service {

using Json = nlohmann::ordered_json;

/// Serialized response body: compact JSON plus a trailing newline.
std::string body(const Json& j);

Json probability(float p);

Json render_summary(const Dataset& d, const ClassSummary& s);
Json render_classes(const Dataset& d, const SortSpec& sort, std::optional<std::size_t> top);
Json render_overview(const Dataset& d, const SortSpec& sort, int bins);
Json render_window(const Dataset& d, const WindowSlice& slice, const WindowOptions& options);
Json render_chord(const Dataset& d, const ChordFlows& flows);
Json render_instance(const Dataset& d, InstanceIndex i);
Json render_error(std::string_view code, std::string_view message,
                  std::optional<std::size_t> line = std::nullopt);

}  // namespace classview::service
