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


// Random in-grammar sentence generation with depth caps and an optional
// coverage-guided mode.

#ifndef RR_FUZZER_H_
#define RR_FUZZER_H_

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "rr/grammar.h"
#include "rr/lexicon.h"

namespace rr {

struct FuzzOptions {
  int pp_depth = 2;  // longest np_pp chain
  int cp_depth = 2;  // deepest sentential complement nesting
  // Probability of taking the recursive alternative whenever the cap allows
  // it. Zero means a uniform choice.
  double pp_bias = 0;
  double cp_bias = 0;
  // Prefer alternatives whose expansion key has not been generated yet.
  bool coverage_guided = false;
};

struct FuzzSample {
  std::vector<std::string> tokens;  // ends with "."
  std::string sentence;
  ParseTree tree;  // the generating derivation
};

class Fuzzer {
 public:
  Fuzzer(const Grammar& grammar, const Lexicon& lexicon, FuzzOptions options,
         std::uint64_t seed);

  FuzzSample next();
  const std::set<std::string>& seen() const { return seen_; }

 private:
  ParseTree expand(const std::string& sym, int pp_level, int cp_level,
                   std::vector<std::string>& tokens);
  std::size_t choose(const std::string& sym, const std::vector<std::size_t>& allowed,
                     std::size_t recursive, double bias);

  const Grammar& grammar_;
  FuzzOptions options_;
  std::mt19937_64 rng_;
  std::map<std::string, std::vector<std::string>> words_;  // leaf -> words
  std::set<std::string> seen_;
};

// One sample from a fresh generator seeded with `seed`.
FuzzSample fuzz_generate(const Grammar& grammar, const Lexicon& lexicon,
                         const FuzzOptions& options, std::uint64_t seed);

}  // namespace rr

#endif  // RR_FUZZER_H_
