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


// Tree-walking reference LF builder and attraction-error analysis over
// parse trees.

#ifndef RR_ORACLE_H_
#define RR_ORACLE_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "rr/grammar.h"
#include "rr/lexicon.h"
#include "rr/logical_form.h"

namespace rr {

// Builds the LF hierarchically from the derivation: noun intros first, then
// verb frames and nmods in word order.
std::string lf_oracle_text(const ParseTree& tree, const Lexicon& lexicon);
LogicalForm lf_oracle(const ParseTree& tree, const Lexicon& lexicon);

// Verb leaf categories without brackets, in stack-DFS order (the last verb
// of the sentence comes first).
std::vector<std::string> get_verbs(const ParseTree& tree);

enum class AgentSide { kLeft, kRightOrMiddle };

// Throws PreconditionError for sentential-complement trees.
AgentSide get_agent_side(const ParseTree& tree);

bool has_cp(const ParseTree& tree);
// True when the subject noun phrase of the top clause is pp-modified.
bool subject_has_pp(const ParseTree& tree);
// Number of verb leaves in the tree.
std::size_t verb_count(const ParseTree& tree);

// Position of the noun nearest the first verb on its left. Requires an
// agent-left tree whose subject carries a pp.
std::size_t predict_attraction_error(const ParseTree& tree);

struct ErrorDescriptor {
  std::vector<Atom> missing;  // in expected, not in actual
  std::vector<Atom> extra;    // in actual, not in expected
  bool intros_differ = false;
  bool single_atom = false;
  std::string relation;  // of the single differing atom
  std::optional<int> expected_right;
  std::optional<int> actual_right;
  bool matches_prediction = false;
};

// Atom-level diff on the shared positional indices. Throws
// PreconditionError when the two forms semantically match.
ErrorDescriptor classify_error(const LogicalForm& expected,
                               const LogicalForm& actual,
                               std::optional<std::size_t> predicted = std::nullopt);

std::string describe(const ErrorDescriptor& d);

}  // namespace rr

#endif  // RR_ORACLE_H_
