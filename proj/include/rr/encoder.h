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


// Single-pass flat pattern matching over the embedded input.

#ifndef RR_ENCODER_H_
#define RR_ENCODER_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rr/lexicon.h"
#include "rr/rasp.h"

namespace rr {

enum class Template {
  kNone,
  kTransOmissibleP1,
  kTransOmissibleP2,
  kTransOmissiblePpP1,
  kTransOmissiblePpP2,
  kTransNotOmissible,
  kTransNotOmissiblePpP1,
  kTransNotOmissiblePpP2,
  kCpTaking,
  kInfTaking,
  kUnaccP1,
  kUnaccP2,
  kUnaccPpP1,
  kUnaccPpP2,
  kUnerg,
  kDatP1,
  kDatP2,
  kDatPpP1,
  kDatPpP2,
  kDatPpP3,
  kDatPpP4,
};

inline constexpr int kTemplateCount = 21;

std::string_view template_name(Template t);
std::optional<Template> parse_template(std::string_view name);
// Items emitted after noun introduction (v_inf_taking counts both verbs).
int template_size(Template t);

// Where a relation's right index comes from.
struct RelationSpec {
  enum class Target { kNoun, kSecondVerb, kNextClauseVerb };
  std::string name;
  Target target = Target::kNoun;
  // For kNoun: 1 is the noun left of the verb, 2.. count nouns to its right.
  int slot = 0;
};

// Relations of the clause head verb, in output order.
const std::vector<RelationSpec>& template_relations(Template t);
// Relations of the v_inf verb of a v_inf_taking clause.
const std::vector<RelationSpec>& inf_relations();

struct NpMasks {
  rasp::Sequence np_det;     // common noun preceded by a determiner
  rasp::Sequence np_prop;    // proper noun
  rasp::Sequence np_any;     // either head
  rasp::Sequence np_first;   // first word of an np
  rasp::Sequence np_after;   // an np ends right before this position
  rasp::Sequence np_before;  // an np starts right after this position
};

struct NoPpMask {
  rasp::Sequence mask;
  // 1-based running count over unmasked nouns, 0 elsewhere.
  rasp::Sequence nps_without_pp_prefix_indices;
};

struct ClauseRange {
  std::size_t begin = 0;
  std::size_t last = 0;  // inclusive
  bool operator==(const ClauseRange&) const = default;
};

struct Clause {
  ClauseRange range;
  Template tmpl = Template::kNone;
  std::size_t verb = 0;
  std::optional<std::size_t> verb2;  // v_inf of a v_inf_taking clause
};

struct EncoderState {
  std::vector<std::string> tokens;
  Embedding emb;
  NpMasks np;
  NoPpMask no_pp;
  rasp::Sequence stems;       // normalized words
  rasp::Sequence noun_mask;
  rasp::Sequence pp_mask;
  rasp::Sequence definite;   // noun determined by "the"
  rasp::Sequence clause_id;  // 0-based; "that" boundaries carry the next id
  rasp::Sequence that_mask;
  std::vector<Clause> clauses;
  // Number of body items (nmods, verb predicates, relations) headed at
  // each position. The body lists them in position order.
  rasp::Sequence item_weight;
  rasp::Sequence item_cum;     // items headed strictly before each position
  rasp::Sequence token_weight; // LF tokens of those items, with separators
  rasp::Sequence token_cum;
  rasp::Sequence noun_rank;    // 1-based running count over all nouns
  // Templates whose indicator fired per clause, in check order.
  std::vector<std::vector<Template>> fired;

  std::size_t size() const { return tokens.size(); }
};

NpMasks build_np_masks(const Embedding& emb);
NoPpMask build_no_pp_np_mask(const Embedding& emb);
std::vector<ClauseRange> segment_clauses(const Embedding& emb);

// Per-position indicator for one template over the whole input.
rasp::Sequence template_indicator(Template t, const Embedding& emb,
                                  const NpMasks& np,
                                  const rasp::Sequence& clause_id);

// Winning template of one clause under the fixed check order.
Template match_templates(const Embedding& emb, const NpMasks& np,
                         const rasp::Sequence& clause_id,
                         const ClauseRange& clause,
                         std::vector<Template>* fired = nullptr);

EncoderState encode(const std::vector<std::string>& tokens,
                    const Lexicon& lexicon);

}  // namespace rr

#endif  // RR_ENCODER_H_
