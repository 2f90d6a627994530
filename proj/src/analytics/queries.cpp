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

#include "classview/analytics/queries.hpp"

#include <algorithm>
#include <tuple>

#include "classview/error.hpp"

namespace classview {

namespace {

void check_class(const Dataset& d, ClassId c) {
  if (c >= d.num_classes()) {
    throw Error(ErrorCode::ClassOutOfRange, "class " + std::to_string(c) + " out of range [0," +
                                                std::to_string(d.num_classes()) + ")");
  }
}

double sort_value(const ClassSummary& s, SortKey key) {
  switch (key) {
    case SortKey::Index: return static_cast<double>(s.class_id);
    case SortKey::Correct: return static_cast<double>(s.correct);
    case SortKey::Inbound: return static_cast<double>(s.inbound);
    case SortKey::Outbound: return static_cast<double>(s.outbound);
    case SortKey::MeanMax: return s.mean_max_pred;
  }
  return 0.0;
}

std::vector<InstanceIndex> collect_passing(const Dataset& d, const FilterSpec& filter,
                                           ClassId first, ClassId last) {
  validate(filter);
  std::vector<std::uint8_t> pass(d.size());
  kernels::parallel::filter_any({d.records().matrix(), d.num_classes()},
                                FloatInterval::from_decimal(filter.pred_min, filter.pred_max),
                                first, last, pass);
  std::vector<InstanceIndex> out;
  for (InstanceIndex i : d.id_order()) {
    if (pass[i]) out.push_back(i);
  }
  return out;
}

}  // namespace

ClassSummary class_summary(const Dataset& d, ClassId c) {
  check_class(d, c);
  return d.summaries()[c];
}

std::vector<ClassId> sort_classes(const Dataset& d, const SortSpec& spec) {
  auto summaries = d.summaries();
  std::vector<ClassId> order(d.num_classes());
  for (std::size_t c = 0; c < order.size(); ++c) order[c] = static_cast<ClassId>(c);
  const bool desc = spec.order == SortOrder::Desc;
  std::sort(order.begin(), order.end(), [&](ClassId a, ClassId b) {
    double va = sort_value(summaries[a], spec.key);
    double vb = sort_value(summaries[b], spec.key);
    if (va != vb) return desc ? va > vb : va < vb;
    return a < b;
  });
  return order;
}

std::vector<InstanceIndex> filter_instances(const Dataset& d, const FilterSpec& filter) {
  return collect_passing(d, filter, 0, static_cast<ClassId>(d.num_classes() - 1));
}

std::vector<InstanceIndex> filter_instances(const Dataset& d, const FilterSpec& filter,
                                            ClassId first, ClassId last) {
  check_class(d, last);
  if (first > last) throw Error(ErrorCode::InvalidRange, "first class exceeds last class");
  return collect_passing(d, filter, first, last);
}

int color_group(double p, const ColorSpec& spec) {
  if (const auto* bins = std::get_if<ColorBins>(&spec)) return bin_index(p, bins->count);
  const auto& t = std::get<ColorThreshold>(spec);
  return (t.lo <= p && p <= t.hi) ? 1 : 0;
}

namespace {

std::variant<BinTable, FloatInterval> make_rule(const ColorSpec& spec) {
  validate(spec);
  if (const auto* bins = std::get_if<ColorBins>(&spec)) return BinTable(bins->count);
  const auto& t = std::get<ColorThreshold>(spec);
  return FloatInterval::from_decimal(t.lo, t.hi);
}

}  // namespace

ColorRule::ColorRule(const ColorSpec& spec) : rule_(make_rule(spec)) {}

int ColorRule::operator()(float p) const noexcept {
  if (const auto* bins = std::get_if<BinTable>(&rule_)) return (*bins)(p);
  return std::get<FloatInterval>(rule_).contains(p) ? 1 : 0;
}

int ColorRule::groups() const noexcept {
  if (const auto* bins = std::get_if<BinTable>(&rule_)) return bins->count();
  return 2;
}

WindowSlice window_slice(const Dataset& d, ClassId from, ClassId to,
                         const WindowOptions& options) {
  if (from > to) throw Error(ErrorCode::InvalidRange, "window start exceeds window end");
  check_class(d, to);
  if (static_cast<std::size_t>(to - from) + 1 > kWindowCap) {
    throw Error(ErrorCode::WindowTooLarge,
                "window spans " + std::to_string(to - from + 1) + " classes, cap is " +
                    std::to_string(kWindowCap));
  }
  validate(options.filter);
  const ColorRule color(options.color);
  const FloatInterval range =
      FloatInterval::from_decimal(options.filter.pred_min, options.filter.pred_max);

  std::vector<InstanceIndex> candidates;
  for (ClassId c = from; c <= to; ++c) {
    auto m = d.members(c);
    candidates.insert(candidates.end(), m.begin(), m.end());
  }
  if (options.membership == WindowMembership::TrueOrPredicted) {
    for (ClassId c = from; c <= to; ++c) {
      for (InstanceIndex i : d.predicted_members(c)) {
        ClassId t = d.true_class(i);
        if (t < from || t > to) candidates.push_back(i);
      }
    }
  }
  std::sort(candidates.begin(), candidates.end(),
            [&d](InstanceIndex a, InstanceIndex b) { return d.id_rank(a) < d.id_rank(b); });

  const std::size_t scope_first = options.scope == FilterScope::Window ? from : 0;
  const std::size_t scope_last =
      options.scope == FilterScope::Window ? to : d.num_classes() - 1;

  WindowSlice slice;
  slice.from = from;
  slice.to = to;
  for (InstanceIndex i : candidates) {
    auto probs = d.probs(i);
    bool pass = false;
    for (std::size_t c = scope_first; c <= scope_last && !pass; ++c) pass = range.contains(probs[c]);
    if (!pass) continue;
    ++slice.total_matching;
    if (slice.instances.size() >= options.limit) continue;
    auto values = probs.subspan(from, static_cast<std::size_t>(to - from) + 1);
    slice.instances.push_back(Polyline{i, std::string(d.id(i)), d.true_class(i),
                                       std::vector<float>(values.begin(), values.end()),
                                       color(d.max_pred(i))});
  }
  auto summaries = d.summaries();
  slice.doughnuts.assign(summaries.begin() + from, summaries.begin() + to + 1);
  return slice;
}

ChordFlows chord_flows(const Dataset& d, std::span<const ClassId> selection,
                       std::size_t example_cap) {
  if (selection.empty()) throw Error(ErrorCode::EmptySelection, "chord selection is empty");
  std::vector<std::ptrdiff_t> position(d.num_classes(), -1);
  for (std::size_t s = 0; s < selection.size(); ++s) {
    check_class(d, selection[s]);
    if (position[selection[s]] >= 0) {
      throw Error(ErrorCode::DuplicateClassInSelection,
                  "class " + std::to_string(selection[s]) + " selected twice");
    }
    position[selection[s]] = static_cast<std::ptrdiff_t>(s);
  }
  const std::size_t m = selection.size();
  ChordFlows out;
  out.classes.assign(selection.begin(), selection.end());
  out.flows.assign(m * m, 0);
  out.examples.assign(m * m, {});
  for (std::size_t s = 0; s < m; ++s) {
    for (InstanceIndex i : d.members(selection[s])) {
      std::ptrdiff_t t = position[d.predicted(i)];
      if (t < 0 || static_cast<std::size_t>(t) == s) continue;
      const std::size_t cell = s * m + static_cast<std::size_t>(t);
      ++out.flows[cell];
      if (out.examples[cell].size() < example_cap) out.examples[cell].emplace_back(d.id(i));
    }
  }
  return out;
}

Histogram prediction_histogram(const Dataset& d, ClassId c, int bins) {
  check_class(d, c);
  const BinTable table(bins);
  Histogram h{c, std::vector<std::uint64_t>(static_cast<std::size_t>(bins))};
  kernels::parallel::histograms_from_sorted(d.sorted_column(c), d.size(), 1, table, h.bins);
  return h;
}

std::vector<Histogram> prediction_histograms(const Dataset& d, int bins) {
  const BinTable table(bins);
  const auto nbins = static_cast<std::size_t>(bins);
  std::vector<std::uint64_t> flat(d.num_classes() * nbins);
  kernels::parallel::histograms_from_sorted(d.sorted_columns(), d.size(), d.num_classes(), table,
                                            flat);
  std::vector<Histogram> out(d.num_classes());
  for (std::size_t c = 0; c < out.size(); ++c) {
    out[c].class_id = static_cast<ClassId>(c);
    out[c].bins.assign(flat.begin() + static_cast<std::ptrdiff_t>(c * nbins),
                       flat.begin() + static_cast<std::ptrdiff_t>((c + 1) * nbins));
  }
  return out;
}

}  // namespace classview
