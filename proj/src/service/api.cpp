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

#include <charconv>
#include <istream>
#include <streambuf>

#include "classview/analytics/queries.hpp"
#include "classview/error.hpp"
#include "classview/ingest/synth.hpp"
#include "classview/service/render.hpp"
#include "classview/service/server.hpp"

namespace classview::service {

namespace {

constexpr int kMaxOverviewBins = 100;

// Read-only istream over borrowed bytes.
class ViewBuf : public std::streambuf {
 public:
  explicit ViewBuf(std::string_view s) {
    char* p = const_cast<char*>(s.data());
    setg(p, p, p + s.size());
  }
};

struct NotFound {
  std::string what;
};

std::optional<std::string> param(const Api::Params& params, const std::string& key) {
  auto it = params.find(key);
  if (it == params.end()) return std::nullopt;
  return it->second;
}

[[noreturn]] void bad_param(const std::string& key, const std::string& value) {
  throw Error(ErrorCode::InvalidArgument, "invalid value '" + value + "' for parameter " + key);
}

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
  T value{};
  auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    bad_param(key, text);
  }
  return value;
}

template <typename T>
T number_or(const Api::Params& params, const std::string& key, T fallback) {
  auto v = param(params, key);
  return v ? parse_number<T>(key, *v) : fallback;
}

SortSpec parse_sort(const Api::Params& params) {
  SortSpec spec;
  if (auto v = param(params, "sort")) {
    auto key = parse_sort_key(*v);
    if (!key) bad_param("sort", *v);
    spec.key = *key;
  }
  if (auto v = param(params, "order")) {
    auto order = parse_sort_order(*v);
    if (!order) bad_param("order", *v);
    spec.order = *order;
  }
  return spec;
}

int status_for(ErrorCode code) { return code == ErrorCode::LimitExceeded ? 413 : 400; }

Api::Response from_error(const Error& e, std::string_view prefix = {}) {
  std::string message = prefix.empty() ? e.detail() : std::string(prefix) + e.detail();
  return Api::error(status_for(e.code()), to_string(e.code()), message, e.line());
}

Json descriptor(const DatasetEntry& e) {
  return {{"dataset_id", e.dataset_id},
          {"name", e.name},
          {"num_classes", e.data->num_classes()},
          {"num_instances", e.data->size()},
          {"created_at", e.created_at},
          {"totals",
           {{"correct", e.data->total_correct()},
            {"misclassified", e.data->total_misclassified()}}}};
}

// Runs fn and converts library errors into JSON error responses.
template <typename Fn>
Api::Response guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const NotFound& nf) {
    return Api::error(404, "NotFound", nf.what);
  } catch (const Error& e) {
    return from_error(e);
  }
}

}  // namespace

Api::Api(Registry& registry, ingest::ParseOptions limits)
    : registry_(registry), limits_(limits) {}

Api::Response Api::error(int status, std::string_view code, std::string_view message,
                         std::optional<std::size_t> line) {
  return {status, body(render_error(code, message, line))};
}

namespace {

std::shared_ptr<const DatasetEntry> lookup(const Registry& registry, const std::string& id) {
  auto entry = registry.get(id);
  if (!entry) throw NotFound{"unknown dataset '" + id + "'"};
  return entry;
}

}  // namespace

Api::Response Api::list_datasets() const {
  Json out = Json::array();
  for (const auto& e : registry_.list()) out.push_back(descriptor(*e));
  return {200, body(out)};
}

Api::Response Api::create_dataset(const Upload& upload) {
  PredictionTable table;
  std::vector<LabelEntry> labels;
  ImageManifest images;
  try {
    ViewBuf buf(upload.predictions);
    std::istream in(&buf);
    table = ingest::parse_predictions(in, limits_);
  } catch (const Error& e) {
    return from_error(e, "predictions: ");
  }
  if (upload.labels) {
    try {
      ViewBuf buf(*upload.labels);
      std::istream in(&buf);
      labels = ingest::parse_labels(in);
    } catch (const Error& e) {
      return from_error(e, "labels: ");
    }
  }
  if (upload.images) {
    try {
      ViewBuf buf(*upload.images);
      std::istream in(&buf);
      images = ingest::parse_image_manifest(in);
    } catch (const Error& e) {
      return from_error(e, "images: ");
    }
  }
  return guarded([&]() -> Response {
    BuildOptions build;
    build.prob_sum_tolerance = limits_.prob_sum_tolerance;
    auto d = build_dataset(std::move(table), std::move(labels), std::move(images), build);
    std::string name = upload.name.empty() ? "dataset" : upload.name;
    auto entry = registry_.add(std::move(name), std::move(d));
    return {201, body(descriptor(*entry))};
  });
}

Api::Response Api::create_demo(const Params& params) {
  return guarded([&]() -> Response {
    ingest::SynthSpec spec;
    spec.num_classes = number_or<std::size_t>(params, "classes", spec.num_classes);
    spec.num_instances = number_or<std::size_t>(params, "instances", spec.num_instances);
    spec.accuracy = number_or<double>(params, "accuracy", spec.accuracy);
    spec.confusion_spread = number_or<std::size_t>(params, "spread", spec.confusion_spread);
    spec.concentration = number_or<double>(params, "concentration", spec.concentration);
    spec.seed = number_or<std::uint64_t>(params, "seed", spec.seed);
    if (spec.num_classes > limits_.max_classes || spec.num_instances > limits_.max_instances) {
      throw Error(ErrorCode::LimitExceeded, "demo dataset exceeds configured limits");
    }
    auto entry = registry_.add(param(params, "name").value_or("demo"),
                               build_dataset(ingest::synthesize(spec)));
    return {201, body(descriptor(*entry))};
  });
}

Api::Response Api::remove_dataset(const std::string& id) {
  if (!registry_.remove(id)) return error(404, "NotFound", "unknown dataset '" + id + "'");
  return {200, body(Json{{"deleted", id}})};
}

Api::Response Api::classes(const std::string& id, const Params& params) const {
  return guarded([&]() -> Response {
    auto entry = lookup(registry_, id);
    auto sort = parse_sort(params);
    std::optional<std::size_t> top;
    if (auto v = param(params, "top")) top = parse_number<std::size_t>("top", *v);
    return {200, body(render_classes(*entry->data, sort, top))};
  });
}

Api::Response Api::overview(const std::string& id, const Params& params) const {
  return guarded([&]() -> Response {
    auto entry = lookup(registry_, id);
    auto sort = parse_sort(params);
    int bins = number_or<int>(params, "bins", 10);
    if (bins < 1 || bins > kMaxOverviewBins) bad_param("bins", std::to_string(bins));
    return {200, body(render_overview(*entry->data, sort, bins))};
  });
}

Api::Response Api::window(const std::string& id, const Params& params) const {
  return guarded([&]() -> Response {
    auto entry = lookup(registry_, id);
    const Dataset& d = *entry->data;
    auto from = number_or<ClassId>(params, "from", 0);
    ClassId default_to = static_cast<ClassId>(std::min<std::size_t>(
        static_cast<std::size_t>(from) + kDefaultWindowWidth - 1, d.num_classes() - 1));
    auto to = number_or<ClassId>(params, "to", default_to);

    WindowOptions options;
    options.filter.pred_min = number_or<double>(params, "pred_min", 0.0);
    options.filter.pred_max = number_or<double>(params, "pred_max", 1.0);
    std::string mode = param(params, "color_mode").value_or("bins");
    if (mode == "bins") {
      options.color = ColorBins{number_or<int>(params, "colors", 10)};
    } else if (mode == "threshold") {
      auto lo = param(params, "lo");
      auto hi = param(params, "hi");
      if (!lo || !hi) throw Error(ErrorCode::InvalidArgument, "threshold mode needs lo and hi");
      options.color = ColorThreshold{parse_number<double>("lo", *lo), parse_number<double>("hi", *hi)};
    } else {
      bad_param("color_mode", mode);
    }
    options.limit = number_or<std::size_t>(params, "limit", kDefaultPolylineLimit);
    std::string membership = param(params, "membership").value_or("true");
    if (membership == "true") {
      options.membership = WindowMembership::TrueClass;
    } else if (membership == "true_or_predicted") {
      options.membership = WindowMembership::TrueOrPredicted;
    } else {
      bad_param("membership", membership);
    }
    std::string scope = param(params, "filter_scope").value_or("all");
    if (scope == "all") {
      options.scope = FilterScope::AllClasses;
    } else if (scope == "window") {
      options.scope = FilterScope::Window;
    } else {
      bad_param("filter_scope", scope);
    }
    auto slice = window_slice(d, from, to, options);
    return {200, body(render_window(d, slice, options))};
  });
}

namespace {

std::vector<ClassId> parse_class_list(const std::string& text) {
  std::vector<ClassId> out;
  if (text.empty()) return out;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = text.find(',', start);
    std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    out.push_back(parse_number<ClassId>("classes", item));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

Api::Response Api::chord(const std::string& id, const Params& params) const {
  return guarded([&]() -> Response {
    auto entry = lookup(registry_, id);
    auto selection = parse_class_list(param(params, "classes").value_or(""));
    auto cap = number_or<std::size_t>(params, "example_cap", kDefaultExampleCap);
    auto flows = chord_flows(*entry->data, selection, cap);
    return {200, body(render_chord(*entry->data, flows))};
  });
}

Api::Response Api::instance(const std::string& id, const std::string& instance_id) const {
  return guarded([&]() -> Response {
    auto entry = lookup(registry_, id);
    auto i = entry->data->find(instance_id);
    if (!i) throw NotFound{"unknown instance '" + instance_id + "'"};
    return {200, body(render_instance(*entry->data, *i))};
  });
}

}  // namespace classview::service
