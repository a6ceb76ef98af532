// Copyright 2026 The rasp-recogs Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "rr/dataset.h"
#include "rr/error.h"
#include "rr/score.h"

namespace rr {
namespace {

// Independent reference: Boost's inverse regularized incomplete beta.
std::pair<double, double> boost_cp(std::size_t k, std::size_t n, double alpha) {
  double lo = k == 0 ? 0.0 : boost::math::ibeta_inv(double(k), double(n - k + 1), alpha / 2);
  double hi = k == n ? 1.0 : boost::math::ibeta_inv(double(k + 1), double(n - k), 1 - alpha / 2);
  return {lo, hi};
}

TEST_CASE("Clopper-Pearson against the reported intervals") {
  auto a = clopper_pearson(3000, 3000);
  CHECK(std::abs(a.first - 0.9988) <= 1e-4);
  CHECK(a.second == 1.0);
  auto b = clopper_pearson(1000, 1000);
  CHECK(std::abs(b.first - 0.9963) <= 1e-4);
  CHECK(b.second == 1.0);
  auto c = clopper_pearson(922, 1000);
  CHECK(std::abs(c.first - 0.9036) <= 1e-4);
  CHECK(std::abs(c.second - 0.9379) <= 1e-4);
  auto z = clopper_pearson(0, 10);
  CHECK(z.first == 0.0);
}

TEST_CASE("Clopper-Pearson matches the Boost oracle") {
  std::mt19937 rng(4);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t n = 1 + rng() % 4000;
    std::size_t k = rng() % (n + 1);
    double alpha = trial % 3 == 0 ? 0.01 : 0.05;
    auto mine = clopper_pearson(k, n, alpha);
    auto ref = boost_cp(k, n, alpha);
    CHECK(mine.first == doctest::Approx(ref.first).epsilon(1e-8));
    CHECK(mine.second == doctest::Approx(ref.second).epsilon(1e-8));
  }
}

TEST_CASE("99% intervals contain 95% intervals") {
  std::mt19937 rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 1 + rng() % 2000;
    std::size_t k = rng() % (n + 1);
    auto wide = clopper_pearson(k, n, 0.01);
    auto narrow = clopper_pearson(k, n, 0.05);
    CHECK(wide.first <= narrow.first + 1e-12);
    CHECK(wide.second >= narrow.second - 1e-12);
  }
}

TEST_CASE("Clopper-Pearson rejects invalid bounds") {
  CHECK_THROWS_AS(clopper_pearson(1, 0), PreconditionError);
  CHECK_THROWS_AS(clopper_pearson(5, 4), PreconditionError);
}

std::vector<DatasetRow> rows_with(const std::vector<std::string>& lfs) {
  std::vector<DatasetRow> rows;
  for (const auto& lf : lfs) rows.push_back({"s", lf, "c", 0});
  return rows;
}

TEST_CASE("score_split") {
  const std::string lf = "boy ( 1 ) ; smile ( 2 ) AND agent ( 2 , 1 )";
  std::vector<std::string> ten(10, lf);
  ScoreReport all = score_split("x", rows_with(ten), ten);
  CHECK(all.sem_matches == 10);
  CHECK(all.string_matches == 10);
  CHECK(std::abs(all.ci_low - 0.6915) <= 1e-4);
  CHECK(all.ci_high == 1.0);
  CHECK_THROWS_AS(score_split("x", {}, {}), PreconditionError);
  CHECK_THROWS_AS(score_split("x", rows_with(ten), {lf}), PreconditionError);
}

TEST_CASE("score_split agrees with a row-wise oracle") {
  const std::vector<std::string> pool = {
      "boy ( 1 ) ; smile ( 2 ) AND agent ( 2 , 1 )",
      "boy ( 3 ) ; smile ( 4 ) AND agent ( 4 , 3 )",
      "* boy ( 1 ) ; smile ( 2 ) AND agent ( 2 , 1 )",
      "",
      "garbage",
  };
  std::mt19937 rng(12);
  std::vector<DatasetRow> rows;
  std::vector<std::string> outs;
  std::size_t sem = 0, em = 0;
  for (int i = 0; i < 200; ++i) {
    rows.push_back({"s", pool[0], "c", 0});
    outs.push_back(pool[rng() % pool.size()]);
    if (outs.back() == pool[0] || outs.back() == pool[1]) ++sem;
    if (outs.back() == pool[0]) ++em;
  }
  ScoreReport r = score_split("mixed", rows, outs);
  CHECK(r.n == 200);
  CHECK(r.sem_matches == sem);
  CHECK(r.string_matches == em);
  CHECK(r.ci_low <= r.sem_rate());
  CHECK(r.sem_rate() <= r.ci_high);
  CHECK(key_values(r).rfind("split=mixed n=200 sem=", 0) == 0);
}

}  // namespace
}  // namespace rr
