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

// Serial reference vs OpenMP kernels over a synthetic dataset.
// Args: {classes, instances}.

#include <benchmark/benchmark.h>

#include <omp.h>

#include <map>
#include <vector>

#include "classview/analytics/kernels.hpp"
#include "classview/analytics/quantize.hpp"
#include "classview/ingest/synth.hpp"

using namespace classview;

namespace {

const PredictionTable& table(std::size_t k, std::size_t n) {
  static std::map<std::pair<std::size_t, std::size_t>, PredictionTable> cache;
  auto key = std::make_pair(k, n);
  auto it = cache.find(key);
  if (it == cache.end()) {
    ingest::SynthSpec spec;
    spec.num_classes = k;
    spec.num_instances = n;
    it = cache.emplace(key, ingest::synthesize(spec)).first;
  }
  return it->second;
}

kernels::MatrixView view(const benchmark::State& state) {
  const auto& t = table(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
  return {t.matrix(), t.num_classes()};
}

void set_items(benchmark::State& state, kernels::MatrixView m) {
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * m.values.size()));
  state.counters["threads"] = omp_get_max_threads();
}

template <bool Parallel>
void BM_top1(benchmark::State& state) {
  auto m = view(state);
  std::vector<ClassId> pred(m.rows());
  std::vector<float> maxp(m.rows());
  for (auto _ : state) {
    if constexpr (Parallel) {
      kernels::parallel::top1(m, pred, maxp);
    } else {
      kernels::serial::top1(m, pred, maxp);
    }
    benchmark::DoNotOptimize(pred.data());
  }
  set_items(state, m);
}

template <bool Parallel>
void BM_histograms(benchmark::State& state) {
  auto m = view(state);
  BinTable bins(10);
  std::vector<std::uint64_t> out(m.num_classes * 10);
  for (auto _ : state) {
    if constexpr (Parallel) {
      kernels::parallel::histograms(m, bins, out);
    } else {
      kernels::serial::histograms(m, bins, out);
    }
    benchmark::DoNotOptimize(out.data());
  }
  set_items(state, m);
}

template <bool Parallel>
void BM_sorted_columns(benchmark::State& state) {
  auto m = view(state);
  std::vector<float> out(m.values.size());
  for (auto _ : state) {
    if constexpr (Parallel) {
      kernels::parallel::sorted_columns(m, out);
    } else {
      kernels::serial::sorted_columns(m, out);
    }
    benchmark::DoNotOptimize(out.data());
  }
  set_items(state, m);
}

template <bool Parallel>
void BM_filter_any(benchmark::State& state) {
  auto m = view(state);
  auto range = FloatInterval::from_decimal(0.4, 0.6);
  std::vector<std::uint8_t> pass(m.rows());
  const auto last = static_cast<ClassId>(m.num_classes - 1);
  for (auto _ : state) {
    if constexpr (Parallel) {
      kernels::parallel::filter_any(m, range, 0, last, pass);
    } else {
      kernels::serial::filter_any(m, range, 0, last, pass);
    }
    benchmark::DoNotOptimize(pass.data());
  }
  set_items(state, m);
}

// Histograms as the overview endpoint computes them, from presorted columns.
void BM_histograms_from_sorted(benchmark::State& state) {
  auto m = view(state);
  std::vector<float> sorted(m.values.size());
  kernels::parallel::sorted_columns(m, sorted);
  BinTable bins(10);
  std::vector<std::uint64_t> out(m.num_classes * 10);
  for (auto _ : state) {
    kernels::parallel::histograms_from_sorted(sorted, m.rows(), m.num_classes, bins, out);
    benchmark::DoNotOptimize(out.data());
  }
  set_items(state, m);
}

void sizes(benchmark::internal::Benchmark* b) {
  b->Args({100, 10000})->Args({1000, 50000})->Unit(benchmark::kMillisecond);
}

}  // namespace

BENCHMARK(BM_top1<false>)->Name("top1/serial")->Apply(sizes);
BENCHMARK(BM_top1<true>)->Name("top1/parallel")->Apply(sizes);
BENCHMARK(BM_histograms<false>)->Name("histograms/serial")->Apply(sizes);
BENCHMARK(BM_histograms<true>)->Name("histograms/parallel")->Apply(sizes);
BENCHMARK(BM_histograms_from_sorted)->Name("histograms/from_sorted")->Apply(sizes);
BENCHMARK(BM_sorted_columns<false>)->Name("sorted_columns/serial")->Apply(sizes);
BENCHMARK(BM_sorted_columns<true>)->Name("sorted_columns/parallel")->Apply(sizes);
BENCHMARK(BM_filter_any<false>)->Name("filter_any/serial")->Apply(sizes);
BENCHMARK(BM_filter_any<true>)->Name("filter_any/parallel")->Apply(sizes);

BENCHMARK_MAIN();
