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


// COGS input grammar, a chart parser over a POS lattice, and expansion-key
// coverage.

#ifndef RR_GRAMMAR_H_
#define RR_GRAMMAR_H_

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "rr/lexicon.h"

namespace rr {

// Symbols keep their angle brackets ("<np>"). A symbol whose alternative
// list is empty is a lexical leaf category.
class Grammar {
 public:
  using Alternative = std::vector<std::string>;

  static Grammar from_json(std::string_view text);
  // The embedded COGS grammar.
  static const Grammar& cogs();

  const std::string& start() const { return order_.front(); }
  const std::vector<std::string>& symbols() const { return order_; }
  bool contains(std::string_view sym) const;
  bool is_leaf(std::string_view sym) const;
  const std::vector<Alternative>& alternatives(std::string_view sym) const;

 private:
  std::vector<std::string> order_;
  std::map<std::string, std::vector<Alternative>, std::less<>> rules_;
};

std::string strip_brackets(std::string_view sym);

// "<lhs> -> <c1> <c2>".
std::string expansion_key(std::string_view lhs, const Grammar::Alternative& rhs);

struct ParseTree {
  std::string label;  // "<np>", or a leaf category such as "<det>"
  std::vector<ParseTree> children;
  std::size_t begin = 0;  // token span [begin, end)
  std::size_t end = 0;
  std::string word;  // leaves only

  bool is_leaf() const { return children.empty(); }
  bool operator==(const ParseTree&) const = default;
};

// Leaf categories (bracketed) a word can take.
std::vector<std::string> leaf_categories(const LexEntry& entry);

// Parses lowercased tokens. A trailing "." is ignored; spans index the
// original token positions. The first listed alternative wins on ambiguity.
ParseTree parse_sentence(const std::vector<std::string>& tokens,
                         const Lexicon& lexicon,
                         const Grammar& grammar = Grammar::cogs());

// True when parse_sentence would succeed.
bool parses(const std::vector<std::string>& tokens, const Lexicon& lexicon,
            const Grammar& grammar = Grammar::cogs());

std::set<std::string> expansion_keys(const ParseTree& tree);

// Every expansion key reachable from the start symbol.
std::set<std::string> max_expansion_coverage(const Grammar& grammar);

struct CoverageReport {
  std::set<std::string> observed;
  std::set<std::string> universe;
  std::set<std::string> missing;
  double fraction = 0;
};

// Throws OutOfGrammar naming the first unparseable sentence index.
CoverageReport coverage(const std::vector<std::string>& sentences,
                        const Lexicon& lexicon,
                        const Grammar& grammar = Grammar::cogs());

struct CoverageCurve {
  // 1-based count of examples needed for full coverage, 0 if never reached.
  std::size_t unshuffled = 0;
  std::vector<std::size_t> shuffled;  // one entry per shuffle
  double median = 0;
  double p025 = 0;
  double p975 = 0;
  std::size_t never_reached = 0;
};

// Works on precomputed key sets, one per row, in file order.
CoverageCurve coverage_curve(const std::vector<std::set<std::string>>& rows,
                             const std::set<std::string>& universe,
                             std::size_t shuffles, unsigned long long seed);

// Linear-interpolated percentile of sorted values, q in [0, 1].
double percentile(const std::vector<double>& sorted, double q);

}  // namespace rr

#endif  // RR_GRAMMAR_H_
