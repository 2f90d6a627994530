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

#include <doctest.h>
#include <omp.h>

#include <algorithm>
#include <bit>
#include <random>

#include "classview/analytics/kernels.hpp"
#include "fixtures.hpp"

using namespace classview;
using namespace classview::kernels;

namespace {

struct Matrix {
  std::size_t k;
  std::vector<float> values;
  std::vector<ClassId> truth;
  MatrixView view() const { return {values, k}; }
  std::size_t rows() const { return truth.size(); }
};

Matrix random_matrix(std::uint64_t seed, std::size_t k, std::size_t n) {
  std::mt19937_64 rng(seed);
  auto t = testing::random_table(rng, k, n);
  return {k, {t.matrix().begin(), t.matrix().end()}, t.true_classes()};
}

}  // namespace

TEST_CASE("parallel kernels match the serial reference") {
  const int saved = omp_get_max_threads();
  for (int threads : {1, 3, 4}) {
    omp_set_num_threads(threads);
    for (auto [k, n] : {std::pair<std::size_t, std::size_t>{2, 1}, {3, 17}, {10, 200}, {37, 501},
                        {1000, 64}}) {
      CAPTURE(threads);
      CAPTURE(k);
      CAPTURE(n);
      Matrix m = random_matrix(k * 131 + n, k, n);

      std::vector<ClassId> ps(n), pp(n);
      std::vector<float> ms(n), mp(n);
      serial::top1(m.view(), ps, ms);
      parallel::top1(m.view(), pp, mp);
      CHECK(ps == pp);
      CHECK(ms == mp);

      std::vector<std::uint64_t> cs(k * k), cp(k * k);
      serial::confusion(m.truth, ps, k, cs);
      parallel::confusion(m.truth, ps, k, cp);
      CHECK(cs == cp);

      for (int b : {1, 2, 10, 100}) {
        BinTable bins(b);
        std::vector<std::uint64_t> hs(k * b), hp(k * b), hx(k * b);
        serial::histograms(m.view(), bins, hs);
        parallel::histograms(m.view(), bins, hp);
        std::vector<float> sorted(n * k);
        parallel::sorted_columns(m.view(), sorted);
        parallel::histograms_from_sorted(sorted, n, k, bins, hx);
        CHECK(hs == hp);
        CHECK(hs == hx);
      }

      std::vector<float> ss(n * k), sp(n * k);
      serial::sorted_columns(m.view(), ss);
      parallel::sorted_columns(m.view(), sp);
      CHECK(ss == sp);

      auto range = FloatInterval::from_decimal(0.25, 0.5);
      std::vector<std::uint8_t> fs(n), fp(n);
      serial::filter_any(m.view(), range, 0, static_cast<ClassId>(k - 1), fs);
      parallel::filter_any(m.view(), range, 0, static_cast<ClassId>(k - 1), fp);
      CHECK(fs == fp);
      serial::filter_any(m.view(), range, 1, 1, fs);
      parallel::filter_any(m.view(), range, 1, 1, fp);
      CHECK(fs == fp);
    }
  }
  omp_set_num_threads(saved);
}

TEST_CASE("argmax breaks ties towards the lowest index") {
  std::vector<float> tie{0.25f, 0.5f, 0.5f, 0.25f};
  CHECK(argmax(std::span<const float>(tie)) == 1);
  std::vector<double> flat{0.2, 0.2, 0.2, 0.2, 0.2};
  CHECK(argmax(std::span<const double>(flat)) == 0);
}

TEST_CASE("sorted columns handle signed zeros, denormals and duplicates") {
  std::mt19937_64 rng(3);
  const float specials[] = {0.0f, -0.0f, 1.0f, 1e-45f, 1.17e-38f, 0.5f, 0.1f, -0.25f, -1.0f};
  const std::size_t k = 3, n = 997;
  std::vector<float> values(k * n);
  std::uniform_int_distribution<std::size_t> pick(0, std::size(specials) - 1);
  std::uniform_real_distribution<float> any(-1.0f, 1.0f);
  for (auto& v : values) v = pick(rng) % 2 ? specials[pick(rng)] : any(rng);
  MatrixView m{values, k};
  std::vector<float> ss(k * n), sp(k * n);
  serial::sorted_columns(m, ss);
  parallel::sorted_columns(m, sp);
  CHECK(ss == sp);
  for (std::size_t c = 0; c < k; ++c) {
    CHECK(std::is_sorted(sp.begin() + static_cast<std::ptrdiff_t>(c * n),
                         sp.begin() + static_cast<std::ptrdiff_t>((c + 1) * n)));
  }
  // the same multiset of bit patterns comes back
  auto bits = [](std::vector<float> v) {
    std::vector<std::uint32_t> out;
    for (float f : v) out.push_back(std::bit_cast<std::uint32_t>(f));
    std::sort(out.begin(), out.end());
    return out;
  };
  CHECK(bits(values) == bits(sp));
}
