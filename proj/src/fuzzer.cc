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


#include "rr/fuzzer.h"

#include <utility>

#include "rr/error.h"

namespace rr {

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

}  // namespace

Fuzzer::Fuzzer(const Grammar& grammar, const Lexicon& lexicon, FuzzOptions options,
               std::uint64_t seed)
    : grammar_(grammar), options_(options), rng_(seed) {
  if (options.pp_depth < 0 || options.cp_depth < 0) {
    throw PreconditionError("depth caps must be non-negative");
  }
  for (const auto& [word, entry] : lexicon.entries()) {
    for (const auto& cat : leaf_categories(entry)) words_[cat].push_back(word);
  }
  for (const auto& sym : grammar.symbols()) {
    if (grammar.is_leaf(sym) && words_[sym].empty()) {
      throw LexiconError("no word for leaf " + sym);
    }
  }
}

std::size_t Fuzzer::choose(const std::string& sym, const std::vector<std::size_t>& allowed,
                           std::size_t recursive, double bias) {
  const auto& alts = grammar_.alternatives(sym);
  if (options_.coverage_guided) {
    std::vector<std::size_t> fresh;
    for (std::size_t a : allowed) {
      if (!seen_.count(expansion_key(sym, alts[a]))) fresh.push_back(a);
    }
    if (!fresh.empty()) {
      std::uniform_int_distribution<std::size_t> pick(0, fresh.size() - 1);
      return fresh[pick(rng_)];
    }
  }
  if (recursive != kNone && bias > 0) {
    std::bernoulli_distribution take(bias);
    if (take(rng_)) return recursive;
  }
  std::uniform_int_distribution<std::size_t> pick(0, allowed.size() - 1);
  return allowed[pick(rng_)];
}

ParseTree Fuzzer::expand(const std::string& sym, int pp_level, int cp_level,
                         std::vector<std::string>& tokens) {
  ParseTree t;
  t.label = sym;
  t.begin = tokens.size();
  if (grammar_.is_leaf(sym)) {
    const auto& pool = words_.at(sym);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    t.word = pool[pick(rng_)];
    tokens.push_back(t.word);
    t.end = tokens.size();
    return t;
  }
  const auto& alts = grammar_.alternatives(sym);
  std::vector<std::size_t> allowed;
  std::size_t recursive = kNone;
  double bias = 0;
  for (std::size_t a = 0; a < alts.size(); ++a) {
    const std::string& first = alts[a].front();
    if (first == "<np_pp>") {
      if (pp_level >= options_.pp_depth) continue;
      recursive = a;
      bias = options_.pp_bias;
    } else if (first == "<vp_external5>") {
      if (cp_level >= options_.cp_depth) continue;
      recursive = a;
      bias = options_.cp_bias;
    } else if (sym == "<start>" && first == "<s1>" && cp_level < options_.cp_depth) {
      // The only route to a complement.
      recursive = a;
      bias = options_.cp_bias;
    }
    allowed.push_back(a);
  }
  if (allowed.empty()) throw GrammarError("no admissible expansion for " + sym);
  std::size_t a = choose(sym, allowed, recursive, bias);
  seen_.insert(expansion_key(sym, alts[a]));
  for (const auto& child : alts[a]) {
    int child_pp = 0;
    int child_cp = cp_level;
    if (sym == "<np>" && child == "<np_pp>") child_pp = pp_level + 1;
    if (sym == "<np_pp>" && child == "<np>") child_pp = pp_level;
    if (sym == "<vp_external5>" && child == "<start>") child_cp = cp_level + 1;
    t.children.push_back(expand(child, child_pp, child_cp, tokens));
  }
  t.end = tokens.size();
  return t;
}

FuzzSample Fuzzer::next() {
  FuzzSample s;
  s.tree = expand(grammar_.start(), 0, 0, s.tokens);
  s.tokens.push_back(".");
  s.sentence = join(s.tokens);
  return s;
}

FuzzSample fuzz_generate(const Grammar& grammar, const Lexicon& lexicon,
                         const FuzzOptions& options, std::uint64_t seed) {
  Fuzzer f(grammar, lexicon, options, seed);
  return f.next();
}

}  // namespace rr
