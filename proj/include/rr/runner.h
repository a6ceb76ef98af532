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


// Batch decoding over a worker pool and per-category scoring.

#ifndef RR_RUNNER_H_
#define RR_RUNNER_H_

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "rr/dataset.h"
#include "rr/decoder.h"
#include "rr/lexicon.h"
#include "rr/score.h"

namespace rr {

// Runs fn(i) for i in [0, n) on up to `threads` workers (0 = hardware
// concurrency). The first exception is rethrown after all workers stop.
void parallel_for(std::size_t n, unsigned threads,
                  const std::function<void(std::size_t)>& fn);

struct RowOutcome {
  std::string output;  // empty when decoding failed
  std::string error;
};

// Per-row failures are recorded, never thrown.
std::vector<RowOutcome> decode_rows(const std::vector<DatasetRow>& rows,
                                    const Lexicon& lexicon,
                                    const DecodeOptions& options,
                                    unsigned threads = 0);

// One report for all rows named `overall`, then one per category in
// lexicographic order.
std::vector<ScoreReport> score_by_category(const std::vector<DatasetRow>& rows,
                                           const std::vector<RowOutcome>& outcomes,
                                           const std::string& overall);

}  // namespace rr

#endif  // RR_RUNNER_H_
