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


#include "rr/runner.h"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <thread>

#include "rr/error.h"

namespace rr {

void parallel_for(std::size_t n, unsigned threads,
                  const std::function<void(std::size_t)>& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex mu;
  auto work = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!failure) failure = std::current_exception();
        next = n;
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::vector<RowOutcome> decode_rows(const std::vector<DatasetRow>& rows,
                                    const Lexicon& lexicon,
                                    const DecodeOptions& options, unsigned threads) {
  std::vector<RowOutcome> out(rows.size());
  parallel_for(rows.size(), threads, [&](std::size_t i) {
    try {
      out[i].output = decode_text(tokenize(rows[i].sentence), lexicon, options);
    } catch (const std::exception& e) {
      out[i].error = e.what();
    }
  });
  return out;
}

std::vector<ScoreReport> score_by_category(const std::vector<DatasetRow>& rows,
                                           const std::vector<RowOutcome>& outcomes,
                                           const std::string& overall) {
  if (rows.size() != outcomes.size()) throw PreconditionError("rows and outcomes differ in length");
  std::vector<std::string> outputs;
  std::map<std::string, std::vector<std::size_t>> by_cat;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    outputs.push_back(outcomes[i].output);
    by_cat[rows[i].category].push_back(i);
  }
  std::vector<ScoreReport> reports{score_split(overall, rows, outputs)};
  for (const auto& [cat, idx] : by_cat) {
    std::vector<DatasetRow> r;
    std::vector<std::string> o;
    for (std::size_t i : idx) {
      r.push_back(rows[i]);
      o.push_back(outputs[i]);
    }
    reports.push_back(score_split(cat, r, o));
  }
  return reports;
}

}  // namespace rr
