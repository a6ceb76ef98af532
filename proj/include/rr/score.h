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


#ifndef RR_SCORE_H_
#define RR_SCORE_H_

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "rr/dataset.h"

namespace rr {

// Regularized incomplete beta function I_x(a, b).
double incomplete_beta(double a, double b, double x);
// Smallest x with I_x(a, b) >= p, by bisection to 1e-10.
double beta_quantile(double p, double a, double b);

// Exact two-sided binomial interval at confidence 1 - alpha.
std::pair<double, double> clopper_pearson(std::size_t successes, std::size_t n,
                                          double alpha = 0.05);

struct ScoreReport {
  std::string split;
  std::size_t n = 0;
  std::size_t sem_matches = 0;
  std::size_t string_matches = 0;
  double ci_low = 0;
  double ci_high = 0;

  double sem_rate() const { return n ? double(sem_matches) / double(n) : 0; }
  double em_rate() const { return n ? double(string_matches) / double(n) : 0; }
};

// Outputs align with rows; an empty output counts as a failed decode.
ScoreReport score_split(const std::string& split,
                        const std::vector<DatasetRow>& rows,
                        const std::vector<std::string>& outputs);

// "split=... n=... sem=... em=... ci_low=... ci_high=..."
std::string key_values(const ScoreReport& r);
std::string human_line(const ScoreReport& r);

}  // namespace rr

#endif  // RR_SCORE_H_
