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

#include "classview/service/render.hpp"

#include "classview/analytics/queries.hpp"
#include "classview/analytics/quantize.hpp"

namespace classview::service {

std::string body(const Json& j) { return j.dump() + "\n"; }

Json probability(float p) { return decimal_value(p); }

namespace {

Json hierarchy(const LabelEntry& label) {
  Json out = Json::array();
  for (const auto& h : label.hierarchy) out.push_back(h);
  return out;
}

Json color_json(const WindowOptions& options) {
  if (const auto* bins = std::get_if<ColorBins>(&options.color)) {
    return {{"mode", "bins"}, {"colors", bins->count}, {"groups", bins->count}};
  }
  const auto& t = std::get<ColorThreshold>(options.color);
  return {{"mode", "threshold"}, {"lo", t.lo}, {"hi", t.hi}, {"groups", 2}};
}

}  // namespace

Json render_summary(const Dataset& d, const ClassSummary& s) {
  const auto& label = d.label(s.class_id);
  return {{"class_id", s.class_id},
          {"label", label.label},
          {"hierarchy", hierarchy(label)},
          {"support", s.support},
          {"correct", s.correct},
          {"inbound", s.inbound},
          {"outbound", s.outbound},
          {"mean_max_pred", s.mean_max_pred},
          {"is_empty", s.is_empty}};
}

Json render_classes(const Dataset& d, const SortSpec& sort, std::optional<std::size_t> top) {
  auto order = sort_classes(d, sort);
  if (top && *top < order.size()) order.resize(*top);
  Json classes = Json::array();
  for (ClassId c : order) classes.push_back(render_summary(d, d.summaries()[c]));
  return {{"sort", to_string(sort.key)}, {"order", to_string(sort.order)}, {"classes", classes}};
}

Json render_overview(const Dataset& d, const SortSpec& sort, int bins) {
  auto order = sort_classes(d, sort);
  auto hists = prediction_histograms(d, bins);
  Json classes = Json::array();
  for (ClassId c : order) {
    classes.push_back({{"summary", render_summary(d, d.summaries()[c])},
                       {"histogram", hists[c].bins}});
  }
  return {{"num_classes", d.num_classes()},
          {"num_instances", d.size()},
          {"bins", bins},
          {"sort", to_string(sort.key)},
          {"order", to_string(sort.order)},
          {"classes", classes}};
}

Json render_window(const Dataset& d, const WindowSlice& slice, const WindowOptions& options) {
  Json doughnuts = Json::array();
  for (const auto& s : slice.doughnuts) doughnuts.push_back(render_summary(d, s));
  Json instances = Json::array();
  for (const auto& line : slice.instances) {
    Json values = Json::array();
    for (float v : line.values) values.push_back(probability(v));
    instances.push_back({{"instance_id", line.instance_id},
                         {"true_class", line.true_class},
                         {"values", std::move(values)},
                         {"color_group", line.color_group}});
  }
  return {{"from", slice.from},
          {"to", slice.to},
          {"filter",
           {{"pred_min", options.filter.pred_min},
            {"pred_max", options.filter.pred_max},
            {"scope", options.scope == FilterScope::Window ? "window" : "all"}}},
          {"membership",
           options.membership == WindowMembership::TrueOrPredicted ? "true_or_predicted" : "true"},
          {"color", color_json(options)},
          {"limit", options.limit},
          {"total_matching", slice.total_matching},
          {"returned", slice.instances.size()},
          {"doughnuts", std::move(doughnuts)},
          {"instances", std::move(instances)}};
}

Json render_chord(const Dataset& d, const ChordFlows& flows) {
  const std::size_t m = flows.size();
  Json nodes = Json::array();
  Json matrix = Json::array();
  for (std::size_t i = 0; i < m; ++i) {
    std::uint64_t outbound = 0;
    std::uint64_t inbound = 0;
    Json row = Json::array();
    for (std::size_t j = 0; j < m; ++j) {
      outbound += flows.flow(i, j);
      inbound += flows.flow(j, i);
      row.push_back(flows.flow(i, j));
    }
    matrix.push_back(std::move(row));
    nodes.push_back({{"class_id", flows.classes[i]},
                     {"label", d.label(flows.classes[i]).label},
                     {"outbound", outbound},
                     {"inbound", inbound}});
  }
  Json examples = Json::array();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (flows.flow(i, j) == 0) continue;
      examples.push_back({{"source", flows.classes[i]},
                          {"target", flows.classes[j]},
                          {"count", flows.flow(i, j)},
                          {"instance_ids", flows.examples_for(i, j)}});
    }
  }
  return {{"classes", std::move(nodes)}, {"flows", std::move(matrix)},
          {"examples", std::move(examples)}};
}

Json render_instance(const Dataset& d, InstanceIndex i) {
  const ClassId truth = d.true_class(i);
  const ClassId predicted = d.predicted(i);
  Json probs = Json::array();
  for (float p : d.probs(i)) probs.push_back(probability(p));
  return {{"instance_id", d.id(i)},
          {"true_class", truth},
          {"label", d.label(truth).label},
          {"hierarchy", hierarchy(d.label(truth))},
          {"predicted_class", predicted},
          {"predicted_label", d.label(predicted).label},
          {"max_pred", probability(d.max_pred(i))},
          {"probs", std::move(probs)},
          {"image_url", d.image_url(i)}};
}

Json render_error(std::string_view code, std::string_view message,
                  std::optional<std::size_t> line) {
  Json err = {{"code", code}, {"message", message}};
  if (line) err["line"] = *line;
  return {{"error", std::move(err)}};
}

}  // namespace classview::service
