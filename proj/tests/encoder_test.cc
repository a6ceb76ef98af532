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


#include <string>
#include <vector>

#include "doctest.h"
#include "rr/encoder.h"
#include "rr/error.h"
#include "rr/fuzzer.h"
#include "rr/grammar.h"
#include "rr/lexicon.h"

namespace rr {
namespace {

using rasp::Sequence;

EncoderState enc(const std::string& s) { return encode(tokenize(s), Lexicon::builtin()); }

void verb_leaves(const ParseTree& t, std::vector<std::string>& out) {
  if (t.is_leaf() && t.label.rfind("<v_", 0) == 0 && t.label != "<v_inf>") {
    out.push_back(strip_brackets(t.label));
  }
  for (const auto& c : t.children) verb_leaves(c, out);
}

TEST_CASE("np masks") {
  const Lexicon& lex = Lexicon::builtin();
  NpMasks a = build_np_masks(lex.embed({"the", "guest", "smiled"}));
  CHECK(a.np_det == Sequence::numeric({0, 1, 0}));
  CHECK(a.np_prop == Sequence::numeric({0, 0, 0}));
  NpMasks b = build_np_masks(lex.embed(tokenize("ella sold a customer a car")));
  CHECK(b.np_prop == Sequence::numeric({1, 0, 0, 0, 0, 0}));
  CHECK(b.np_det == Sequence::numeric({0, 0, 0, 1, 0, 1}));
  NpMasks c = build_np_masks(lex.embed({".", "."}));
  CHECK(c.np_det == Sequence::numeric({0, 0}));
  CHECK(c.np_prop == Sequence::numeric({0, 0}));
  CHECK(c.np_any == Sequence::numeric({0, 0}));
}

TEST_CASE("template matching examples") {
  CHECK(enc("ella sold a customer a car").clauses.at(0).tmpl == Template::kDatP2);
  CHECK(enc("the guest smiled").clauses.at(0).tmpl == Template::kUnerg);
  CHECK(enc("the customer was sold a car by ella").clauses.at(0).tmpl == Template::kDatPpP4);
  CHECK(enc("ella sold a customer in a house a car").clauses.at(0).tmpl == Template::kDatP2);
  CHECK(enc("the customer was sold a car").clauses.at(0).tmpl == Template::kDatPpP3);
  CHECK(enc("the car was sold to the customer by ella").clauses.at(0).tmpl ==
        Template::kDatPpP2);
}

TEST_CASE("v_dat_p2 pattern indicator") {
  const Lexicon& lex = Lexicon::builtin();
  Embedding e = lex.embed(tokenize("ella sold a customer a car"));
  NpMasks np = build_np_masks(e);
  Sequence ind = template_indicator(Template::kDatP2, e, np, Sequence::numeric({0, 0, 0, 0, 0, 0}));
  CHECK(ind == Sequence::numeric({0, 1, 0, 0, 0, 0}));
}

TEST_CASE("no_pp_np mask") {
  const Lexicon& lex = Lexicon::builtin();
  NoPpMask a = build_no_pp_np_mask(lex.embed(tokenize("The cake on the plate burned")));
  CHECK(a.mask.num(4) == 0);
  CHECK(a.nps_without_pp_prefix_indices == Sequence::numeric({0, 1, 0, 0, 0, 0}));
  NoPpMask b = build_no_pp_np_mask(lex.embed(tokenize("the guest smiled")));
  CHECK(b.mask == Sequence::numeric({1, 1, 1}));
  NoPpMask c =
      build_no_pp_np_mask(lex.embed(tokenize("A girl on the stool on the table drew a frog")));
  CHECK(c.mask.num(4) == 0);
  CHECK(c.mask.num(7) == 0);
  CHECK(c.nps_without_pp_prefix_indices.num(1) == 1);
  CHECK(c.nps_without_pp_prefix_indices.num(10) == 2);
  CHECK(c.nps_without_pp_prefix_indices.num(4) == 0);
}

TEST_CASE("no_pp_np mask excludes proper nouns after a preposition") {
  NoPpMask m = build_no_pp_np_mask(Lexicon::builtin().embed(tokenize("a cake on emma burned")));
  CHECK(m.mask == Sequence::numeric({1, 1, 1, 0, 1}));
}

TEST_CASE("clause segmentation") {
  const Lexicon& lex = Lexicon::builtin();
  auto two = segment_clauses(lex.embed(tokenize("the girl noticed that a boy painted the girl")));
  REQUIRE(two.size() == 2);
  CHECK(two[0] == ClauseRange{0, 2});
  CHECK(two[1] == ClauseRange{4, 8});
  auto one = segment_clauses(lex.embed(tokenize("a boy painted the girl")));
  REQUIRE(one.size() == 1);
  CHECK(one[0] == ClauseRange{0, 4});
  auto three = segment_clauses(
      lex.embed(tokenize("emma said that the girl noticed that a boy painted the girl .")));
  REQUIRE(three.size() == 3);
  CHECK(three[0] == ClauseRange{0, 1});
  CHECK(three[1] == ClauseRange{3, 5});
  CHECK(three[2] == ClauseRange{7, 12});
}

TEST_CASE("unsupported sentences are rejected") {
  CHECK_THROWS_AS(enc("the girl the boy"), UnsupportedSentence);
  CHECK_THROWS_AS(enc("the girl noticed that"), UnsupportedSentence);
}

TEST_CASE("template names round-trip") {
  for (int i = 1; i < kTemplateCount; ++i) {
    auto t = static_cast<Template>(i);
    CHECK(parse_template(template_name(t)) == t);
    CHECK(template_size(t) >= 1);
  }
  CHECK_FALSE(parse_template("v_nonsense").has_value());
}

TEST_CASE("each clause of a fuzzed sentence resolves to its grammar frame") {
  const Lexicon& lex = Lexicon::builtin();
  FuzzOptions opt;
  opt.pp_depth = 3;
  opt.cp_depth = 3;
  Fuzzer fz(Grammar::cogs(), lex, opt, 101);
  for (int i = 0; i < 500; ++i) {
    FuzzSample s = fz.next();
    EncoderState e = encode(s.tokens, lex);
    std::vector<std::string> frames;
    verb_leaves(s.tree, frames);
    REQUIRE(frames.size() == e.clauses.size());
    for (std::size_t c = 0; c < frames.size(); ++c) {
      CHECK_MESSAGE(template_name(e.clauses[c].tmpl) == frames[c], s.sentence);
      CHECK(!e.fired[c].empty());
    }
  }
}

}  // namespace
}  // namespace rr
