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

// Naive reference recomputation of every analytics quantity, straight from
// the raw records with plain loops. Shares no code with the library beyond
// the input table and result structs.

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include "classview/analytics/types.hpp"

namespace classview::oracle {

struct Record {
  std::string id;
  std::size_t truth;
  std::vector<float> probs;
};

inline std::vector<Record> records(const PredictionTable& t) {
  std::vector<Record> out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    auto p = t.probs(i);
    out.push_back({std::string(t.id(i)), t.true_class(i), {p.begin(), p.end()}});
  }
  return out;
}

/// The decimal a float prints as (shortest round-trip form), via strtod.
inline double decimal(float f) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf - 1, f);
  *res.ptr = '\0';
  return std::strtod(buf, nullptr);
}

inline std::size_t top1(const std::vector<float>& p) {
  std::size_t best = 0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    bool beats_all_earlier = true;
    for (std::size_t q = 0; q < j; ++q) {
      if (p[q] >= p[j]) beats_all_earlier = false;
    }
    bool at_least_all_later = true;
    for (std::size_t q = j + 1; q < p.size(); ++q) {
      if (p[q] > p[j]) at_least_all_later = false;
    }
    if (beats_all_earlier && at_least_all_later) {
      best = j;
      break;
    }
  }
  return best;
}

inline float max_of(const std::vector<float>& p) {
  float m = p[0];
  for (float v : p) m = v > m ? v : m;
  return m;
}

inline std::vector<std::vector<std::uint64_t>> confusion(const std::vector<Record>& rs,
                                                         std::size_t k) {
  std::vector<std::vector<std::uint64_t>> m(k, std::vector<std::uint64_t>(k, 0));
  for (const auto& r : rs) m[r.truth][top1(r.probs)] += 1;
  return m;
}

inline ClassSummary summary(const std::vector<Record>& rs, std::size_t c) {
  ClassSummary s;
  s.class_id = static_cast<ClassId>(c);
  double sum = 0.0;
  for (const auto& r : rs) {
    std::size_t pred = top1(r.probs);
    if (r.truth == c) {
      ++s.support;
      sum += max_of(r.probs);
      if (pred == c) ++s.correct; else ++s.outbound;
    } else if (pred == c) {
      ++s.inbound;
    }
  }
  s.is_empty = s.support == 0;
  s.mean_max_pred = s.is_empty ? 0.0 : sum / static_cast<double>(s.support);
  return s;
}

inline double key_of(const ClassSummary& s, SortKey key) {
  switch (key) {
    case SortKey::Index: return s.class_id;
    case SortKey::Correct: return static_cast<double>(s.correct);
    case SortKey::Inbound: return static_cast<double>(s.inbound);
    case SortKey::Outbound: return static_cast<double>(s.outbound);
    case SortKey::MeanMax: return s.mean_max_pred;
  }
  return 0;
}

/// Selection sort: repeatedly take the best remaining class.
inline std::vector<ClassId> sorted(const std::vector<ClassSummary>& ss, SortSpec spec) {
  std::vector<bool> taken(ss.size(), false);
  std::vector<ClassId> out;
  for (std::size_t round = 0; round < ss.size(); ++round) {
    std::size_t best = ss.size();
    for (std::size_t c = 0; c < ss.size(); ++c) {
      if (taken[c]) continue;
      if (best == ss.size()) {
        best = c;
        continue;
      }
      double a = key_of(ss[c], spec.key), b = key_of(ss[best], spec.key);
      bool better = spec.order == SortOrder::Asc ? a < b : a > b;
      if (better) best = c;
    }
    taken[best] = true;
    out.push_back(static_cast<ClassId>(best));
  }
  return out;
}

inline bool in_range(float p, double lo, double hi) {
  double d = decimal(p);
  return lo <= d && d <= hi;
}

inline int bin(float p, int n) {
  double g = std::floor(decimal(p) * n + 1e-9);
  if (g < 0) g = 0;
  if (g > n - 1) g = n - 1;
  return static_cast<int>(g);
}

inline bool passes(const Record& r, double lo, double hi, std::size_t first, std::size_t last) {
  for (std::size_t j = first; j <= last; ++j) {
    if (in_range(r.probs[j], lo, hi)) return true;
  }
  return false;
}

inline std::vector<std::string> sorted_ids(std::vector<std::string> ids) {
  // insertion sort, lexicographic bytes
  for (std::size_t i = 1; i < ids.size(); ++i) {
    for (std::size_t j = i; j > 0 && ids[j] < ids[j - 1]; --j) std::swap(ids[j], ids[j - 1]);
  }
  return ids;
}

inline std::vector<std::string> filter(const std::vector<Record>& rs, double lo, double hi) {
  std::vector<std::string> ids;
  for (const auto& r : rs) {
    if (passes(r, lo, hi, 0, r.probs.size() - 1)) ids.push_back(r.id);
  }
  return sorted_ids(ids);
}

inline std::vector<std::uint64_t> histogram(const std::vector<Record>& rs, std::size_t c, int n) {
  std::vector<std::uint64_t> h(static_cast<std::size_t>(n), 0);
  for (const auto& r : rs) h[static_cast<std::size_t>(bin(r.probs[c], n))] += 1;
  return h;
}

struct Chord {
  std::vector<std::vector<std::uint64_t>> flows;
  std::vector<std::vector<std::vector<std::string>>> examples;
};

inline Chord chord(const std::vector<Record>& rs, const std::vector<ClassId>& sel,
                   std::size_t cap) {
  const std::size_t m = sel.size();
  Chord out{std::vector<std::vector<std::uint64_t>>(m, std::vector<std::uint64_t>(m, 0)),
            std::vector<std::vector<std::vector<std::string>>>(
                m, std::vector<std::vector<std::string>>(m))};
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      if (a == b) continue;
      std::vector<std::string> ids;
      for (const auto& r : rs) {
        if (r.truth == sel[a] && top1(r.probs) == sel[b]) ids.push_back(r.id);
      }
      out.flows[a][b] = ids.size();
      ids = sorted_ids(ids);
      if (ids.size() > cap) ids.resize(cap);
      out.examples[a][b] = ids;
    }
  }
  return out;
}

struct WindowLine {
  std::string id;
  std::size_t truth;
  std::vector<float> values;
  int group;
};

struct Window {
  std::vector<WindowLine> lines;
  std::uint64_t total;
};

inline int color(float maxp, const ColorSpec& spec) {
  if (auto* b = std::get_if<ColorBins>(&spec)) return bin(maxp, b->count);
  const auto& t = std::get<ColorThreshold>(spec);
  return in_range(maxp, t.lo, t.hi) ? 1 : 0;
}

inline Window window(const std::vector<Record>& rs, std::size_t from, std::size_t to,
                     const WindowOptions& o) {
  std::vector<std::string> ids;
  for (const auto& r : rs) {
    bool member = r.truth >= from && r.truth <= to;
    if (o.membership == WindowMembership::TrueOrPredicted) {
      std::size_t p = top1(r.probs);
      member = member || (p >= from && p <= to);
    }
    std::size_t first = o.scope == FilterScope::Window ? from : 0;
    std::size_t last = o.scope == FilterScope::Window ? to : r.probs.size() - 1;
    if (member && passes(r, o.filter.pred_min, o.filter.pred_max, first, last)) ids.push_back(r.id);
  }
  ids = sorted_ids(ids);
  Window w{{}, ids.size()};
  for (std::size_t i = 0; i < ids.size() && i < o.limit; ++i) {
    for (const auto& r : rs) {
      if (r.id != ids[i]) continue;
      w.lines.push_back({r.id, r.truth,
                         std::vector<float>(r.probs.begin() + static_cast<std::ptrdiff_t>(from),
                                            r.probs.begin() + static_cast<std::ptrdiff_t>(to) + 1),
                         color(max_of(r.probs), o.color)});
    }
  }
  return w;
}

}  // namespace classview::oracle
