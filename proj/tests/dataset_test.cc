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


#include <atomic>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "rr/dataset.h"
#include "rr/decoder.h"
#include "rr/error.h"
#include "rr/grammar.h"
#include "rr/lexicon.h"
#include "rr/runner.h"

namespace rr {
namespace {

std::filesystem::path write_temp(const std::string& name, const std::string& body) {
  auto p = std::filesystem::temp_directory_path() / ("rr_dataset_test_" + name);
  std::ofstream(p) << body;
  return p;
}

const std::string kPainted =
    "boy ( 1 ) ; * girl ( 4 ) ; paint ( 2 ) AND agent ( 2 , 1 ) AND theme ( 2 , 4 )";

TEST_CASE("load_tsv reads three-field rows") {
  auto p = write_temp("ok.tsv", "a boy painted the girl\t" + kPainted + "\tin_distribution\n\n");
  LoadedRows r = load_tsv(p);
  REQUIRE(r.rows.size() == 1);
  CHECK(r.rows[0].sentence == "a boy painted the girl");
  CHECK(r.rows[0].lf == kPainted);
  CHECK(r.rows[0].category == "in_distribution");
  CHECK(r.rows[0].line == 1);
}

TEST_CASE("load_tsv skips a header row") {
  auto p = write_temp("hdr.tsv", "inputs\ttargets\tcategory\na boy painted the girl\t" + kPainted +
                                     "\tx\n");
  LoadedRows r = load_tsv(p);
  REQUIRE(r.rows.size() == 1);
  CHECK(r.rows[0].line == 2);
}

TEST_CASE("load_tsv rejects short rows with the line number") {
  auto p = write_temp("bad.tsv", "a boy painted the girl\t" + kPainted + "\tx\nonly\ttwo\n");
  try {
    load_tsv(p);
    FAIL("expected DatasetError");
  } catch (const DatasetError& e) {
    CHECK(std::string(e.what()).find(":2:") != std::string::npos);
  }
  CHECK_THROWS_AS(load_tsv("/nonexistent/rr.tsv"), DatasetError);
}

TEST_CASE("load_tsv grammar filter drops out-of-grammar rows") {
  auto p = write_temp("filter.tsv", "a boy painted the girl\t" + kPainted + "\tx\n" +
                                        "painted a boy the girl\t" + kPainted + "\tx\n");
  LoadedRows r = load_tsv(p, &Grammar::cogs(), &Lexicon::builtin());
  CHECK(r.rows.size() == 1);
  CHECK(r.dropped == 1);
  CHECK_THROWS_AS(load_tsv(p, &Grammar::cogs(), nullptr), PreconditionError);
}

TEST_CASE("write_tsv round-trips") {
  std::vector<DatasetRow> rows = {{"a boy painted the girl", kPainted, "c", 1}};
  auto p = std::filesystem::temp_directory_path() / "rr_dataset_test_rt.tsv";
  write_tsv(p, rows);
  LoadedRows back = load_tsv(p);
  REQUIRE(back.rows.size() == 1);
  CHECK(back.rows[0].sentence == rows[0].sentence);
  CHECK(back.rows[0].lf == rows[0].lf);
  CHECK(back.rows[0].category == "c");
}

TEST_CASE("parallel_for visits each index once") {
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i]++; });
  for (const auto& h : hits) CHECK(h.load() == 1);
  CHECK_THROWS_AS(parallel_for(10, 3,
                               [](std::size_t i) {
                                 if (i == 7) throw std::runtime_error("boom");
                               }),
                  std::runtime_error);
}

TEST_CASE("decode_rows and score_by_category") {
  std::vector<DatasetRow> rows = {
      {"a boy painted the girl", kPainted, "b", 1},
      {"the flower grew", "* flower ( 1 ) ; grow ( 2 ) AND theme ( 2 , 1 )", "a", 2},
      {"the flower grew", "* flower ( 1 ) ; grow ( 2 ) AND agent ( 2 , 1 )", "a", 3},
      {"a boy xyzzy", kPainted, "b", 4},
  };
  auto outcomes = decode_rows(rows, Lexicon::builtin(), DecodeOptions{}, 2);
  REQUIRE(outcomes.size() == 4);
  CHECK(outcomes[0].output == kPainted);
  CHECK(outcomes[3].output.empty());
  CHECK_FALSE(outcomes[3].error.empty());
  auto reports = score_by_category(rows, outcomes, "all");
  REQUIRE(reports.size() == 3);
  CHECK(reports[0].split == "all");
  CHECK(reports[0].n == 4);
  CHECK(reports[0].sem_matches == 2);
  CHECK(reports[1].split == "a");
  CHECK(reports[1].sem_matches == 1);
  CHECK(reports[2].split == "b");
  CHECK(reports[2].sem_matches == 1);
}

}  // namespace
}  // namespace rr
