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


#include "rr/augment.h"

#include <sstream>

#include "rr/error.h"
#include "rr/logical_form.h"
#include "rr/oracle.h"

namespace rr {

namespace {

std::vector<std::string> split_raw(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::size_t count_label(const ParseTree& t, const std::string& label) {
  std::size_t n = t.label == label ? 1 : 0;
  for (const auto& c : t.children) n += count_label(c, label);
  return n;
}

const ParseTree* find_label(const ParseTree& t, const std::string& label) {
  if (t.label == label) return &t;
  for (const auto& c : t.children) {
    if (const ParseTree* f = find_label(c, label)) return f;
  }
  return nullptr;
}

void proper_noun_positions(const ParseTree& t, std::vector<std::size_t>& out) {
  if (t.label == "<proper_noun>") out.push_back(t.begin);
  for (const auto& c : t.children) proper_noun_positions(c, out);
}

}  // namespace

AugmentResult augment_v_dat_p2(const DatasetRow& row, const Lexicon& lexicon,
                               const Grammar& grammar) {
  AugmentResult r;
  std::vector<std::string> raw = split_raw(row.sentence);
  std::vector<std::string> low;
  for (const auto& w : raw) low.push_back(to_lower(w));
  if (!parses(low, lexicon, grammar)) {
    r.skip_reason = "out of grammar";
    return r;
  }
  ParseTree tree = parse_sentence(low, lexicon, grammar);
  if (has_cp(tree) || verb_count(tree) != 1) {
    r.skip_reason = "not a single-verb sentence";
    return r;
  }
  const ParseTree* frame = find_label(tree, "<vp_external7>");
  if (!frame) {
    r.skip_reason = "not np v_dat_p2 np np";
    return r;
  }
  if (count_label(tree, "<pp>") != 1) {
    r.skip_reason = "needs exactly one pp";
    return r;
  }
  const ParseTree& recipient = frame->children.at(1);
  const ParseTree& theme = frame->children.at(2);
  if (theme.children.at(0).label != "<np_pp>") {
    r.skip_reason = "pp is not on the theme";
    return r;
  }
  if (recipient.children.at(0).label != "<np_det>") {
    r.skip_reason = "proper-noun recipient cannot take a pp";
    return r;
  }
  // theme = det noun pp np...; move "pp np..." right after the recipient.
  const std::size_t tb = theme.begin;
  const std::size_t te = theme.end;
  std::vector<std::string> moved(raw.begin(), raw.begin() + recipient.end);
  moved.insert(moved.end(), raw.begin() + tb + 2, raw.begin() + te);
  moved.insert(moved.end(), raw.begin() + tb, raw.begin() + tb + 2);
  moved.insert(moved.end(), raw.begin() + te, raw.end());

  std::vector<std::string> moved_low;
  for (const auto& w : moved) moved_low.push_back(to_lower(w));
  if (!parses(moved_low, lexicon, grammar)) {
    r.skip_reason = "transformed sentence does not reparse";
    return r;
  }
  ParseTree new_tree = parse_sentence(moved_low, lexicon, grammar);
  LogicalForm lf = lf_oracle(new_tree, lexicon);
  std::vector<std::size_t> props;
  proper_noun_positions(new_tree, props);
  for (auto& term : lf.intros) {
    for (std::size_t p : props) {
      if (static_cast<std::size_t>(term.index) == p) term.label = moved[p];
    }
  }
  DatasetRow out;
  out.sentence = join(moved);
  out.lf = to_string(lf);
  out.category = kAugmentCategory;
  out.line = row.line;
  r.row = std::move(out);
  return r;
}

AugmentSummary augment_all(const std::vector<DatasetRow>& rows, const Lexicon& lexicon,
                           const Grammar& grammar) {
  AugmentSummary s;
  for (const auto& row : rows) {
    AugmentResult r = augment_v_dat_p2(row, lexicon, grammar);
    if (r.row) {
      s.rows.push_back(std::move(*r.row));
    } else {
      ++s.skipped;
    }
  }
  return s;
}

}  // namespace rr
