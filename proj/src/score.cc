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


#include "rr/score.h"

#include <cmath>
#include <cstdio>
#include <limits>

#include "rr/error.h"
#include "rr/logical_form.h"

namespace rr {

namespace {

// Continued fraction for the incomplete beta (modified Lentz).
double beta_cf(double a, double b, double x) {
  constexpr double kTiny = 1e-300;
  constexpr double kEps = 1e-15;
  double qab = a + b;
  double qap = a + 1;
  double qam = a - 1;
  double c = 1;
  double d = 1 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1 / d;
  double h = d;
  for (int m = 1; m <= 100000; ++m) {
    double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1) < kEps) break;
  }
  return h;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
  if (x <= 0) return 0;
  if (x >= 1) return 1;
  double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                    a * std::log(x) + b * std::log1p(-x);
  double front = std::exp(ln_front);
  if (x < (a + 1) / (a + b + 2)) return front * beta_cf(a, b, x) / a;
  return 1 - front * beta_cf(b, a, 1 - x) / b;
}

double beta_quantile(double p, double a, double b) {
  double lo = 0;
  double hi = 1;
  while (hi - lo > 1e-10) {
    double mid = 0.5 * (lo + hi);
    if (incomplete_beta(a, b, mid) < p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::pair<double, double> clopper_pearson(std::size_t successes, std::size_t n,
                                          double alpha) {
  if (n == 0 || successes > n || !(alpha > 0 && alpha < 1)) {
    throw PreconditionError("clopper_pearson: invalid bounds");
  }
  double k = static_cast<double>(successes);
  double nn = static_cast<double>(n);
  double low = successes == 0 ? 0.0 : beta_quantile(alpha / 2, k, nn - k + 1);
  double high = successes == n ? 1.0 : beta_quantile(1 - alpha / 2, k + 1, nn - k);
  return {low, high};
}

ScoreReport score_split(const std::string& split,
                        const std::vector<DatasetRow>& rows,
                        const std::vector<std::string>& outputs) {
  if (rows.size() != outputs.size()) {
    throw PreconditionError("score_split: rows and outputs differ in length");
  }
  if (rows.empty()) throw PreconditionError("score_split: empty batch");
  ScoreReport r;
  r.split = split;
  r.n = rows.size();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (outputs[i].empty()) continue;
    if (semantic_exact_match(rows[i].lf, outputs[i])) ++r.sem_matches;
    if (string_exact_match(rows[i].lf, outputs[i])) ++r.string_matches;
  }
  std::tie(r.ci_low, r.ci_high) = clopper_pearson(r.sem_matches, r.n);
  return r;
}

std::string key_values(const ScoreReport& r) {
  return "split=" + r.split + " n=" + std::to_string(r.n) +
         " sem=" + std::to_string(r.sem_matches) +
         " em=" + std::to_string(r.string_matches) + " ci_low=" + fmt(r.ci_low) +
         " ci_high=" + fmt(r.ci_high);
}

std::string human_line(const ScoreReport& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "%-28s n=%-6zu SEM %6.2f%% (%.2f-%.2f%%)  EM %6.2f%%",
                r.split.c_str(), r.n, 100 * r.sem_rate(), 100 * r.ci_low,
                100 * r.ci_high, 100 * r.em_rate());
  return buf;
}

}  // namespace rr
