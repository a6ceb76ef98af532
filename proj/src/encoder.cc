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


#include "rr/encoder.h"

#include <array>
#include <cmath>
#include <utility>

#include "rr/error.h"

namespace rr {

namespace {

using rasp::Cmp;
using rasp::Op;
using rasp::Sequence;

struct TemplateRow {
  Template t;
  const char* name;
  int size;
};

constexpr TemplateRow kTemplates[] = {
    {Template::kNone, "", 0},
    {Template::kTransOmissibleP1, "v_trans_omissible_p1", 1},
    {Template::kTransOmissibleP2, "v_trans_omissible_p2", 2},
    {Template::kTransOmissiblePpP1, "v_trans_omissible_pp_p1", 1},
    {Template::kTransOmissiblePpP2, "v_trans_omissible_pp_p2", 2},
    {Template::kTransNotOmissible, "v_trans_not_omissible", 2},
    {Template::kTransNotOmissiblePpP1, "v_trans_not_omissible_pp_p1", 1},
    {Template::kTransNotOmissiblePpP2, "v_trans_not_omissible_pp_p2", 2},
    {Template::kCpTaking, "v_cp_taking", 2},
    {Template::kInfTaking, "v_inf_taking", 5},
    {Template::kUnaccP1, "v_unacc_p1", 2},
    {Template::kUnaccP2, "v_unacc_p2", 1},
    {Template::kUnaccPpP1, "v_unacc_pp_p1", 1},
    {Template::kUnaccPpP2, "v_unacc_pp_p2", 2},
    {Template::kUnerg, "v_unerg", 1},
    {Template::kDatP1, "v_dat_p1", 3},
    {Template::kDatP2, "v_dat_p2", 3},
    {Template::kDatPpP1, "v_dat_pp_p1", 2},
    {Template::kDatPpP2, "v_dat_pp_p2", 3},
    {Template::kDatPpP3, "v_dat_pp_p3", 2},
    {Template::kDatPpP4, "v_dat_pp_p4", 3},
};

// Later entries override earlier ones; v_dat_pp_p2 is checked after
// v_dat_pp_p4.
constexpr Template kCheckOrder[] = {
    Template::kTransOmissibleP1,     Template::kTransOmissibleP2,
    Template::kTransOmissiblePpP1,   Template::kTransOmissiblePpP2,
    Template::kTransNotOmissible,    Template::kTransNotOmissiblePpP1,
    Template::kTransNotOmissiblePpP2, Template::kCpTaking,
    Template::kInfTaking,            Template::kUnaccP1,
    Template::kUnaccP2,              Template::kUnaccPpP1,
    Template::kUnaccPpP2,            Template::kUnerg,
    Template::kDatP1,                Template::kDatP2,
    Template::kDatPpP1,              Template::kDatPpP4,
    Template::kDatPpP2,              Template::kDatPpP3,
};

RelationSpec noun(const char* name, int slot) {
  return {name, RelationSpec::Target::kNoun, slot};
}

Sequence prev(const Sequence& x) {
  Sequence idx = Sequence::indices(x.size());
  return rasp::aggregate(rasp::select(idx + 1, idx, Cmp::kEq), x);
}

Sequence next(const Sequence& x) {
  Sequence idx = Sequence::indices(x.size());
  return rasp::aggregate(rasp::select(idx - 1, idx, Cmp::kEq), x);
}

Sequence band(const Sequence& a, const Sequence& b) {
  return rasp::elementwise(Op::kAnd, a, b);
}

Sequence bor(const Sequence& a, const Sequence& b) {
  return rasp::elementwise(Op::kOr, a, b);
}

Sequence bnot(const Sequence& a) { return 1 - a; }

Sequence has_code(const Embedding& emb, PosCode c) {
  Sequence out = rasp::indicator(emb.pos, Cmp::kEq, code(c));
  for (const auto& v : emb.vmap) out = bor(out, rasp::indicator(v, Cmp::kEq, code(c)));
  return out;
}

Sequence pos_is(const Embedding& emb, PosCode c) {
  return rasp::indicator(emb.pos, Cmp::kEq, code(c));
}

// Indicator of some x further right in the query's clause.
Sequence exists_after(const Sequence& x, const Sequence& clause_id) {
  Sequence idx = Sequence::indices(x.size());
  auto sel = rasp::select(x, 1, Cmp::kEq) & rasp::select(idx, idx, Cmp::kGt) &
             rasp::select(clause_id, clause_id, Cmp::kEq);
  return rasp::aggregate(sel, 1);
}

struct Features {
  Sequence A;       // np ends right before
  Sequence W;       // "was" right before, np before that
  Sequence B;       // np starts right after
  Sequence E;       // next position is filler or past the end
  Sequence BY;      // "by np" right after
  Sequence TO_NP;   // "to np" right after
  Sequence TO_INF;  // "to v_inf" right after
  Sequence THAT;    // "that" right after
  Sequence by_after;
  Sequence to_after;
  Sequence junction_after;  // two adjacent nps further right
  std::array<Sequence, 22> has;
};

Features features(const Embedding& emb, const NpMasks& np,
                  const Sequence& clause_id) {
  Features f;
  for (int c = 1; c <= 21; ++c) f.has[c] = has_code(emb, static_cast<PosCode>(c));
  Sequence was = pos_is(emb, PosCode::kWas);
  Sequence by = pos_is(emb, PosCode::kBy);
  Sequence to = pos_is(emb, PosCode::kTo);
  Sequence that = pos_is(emb, PosCode::kThat);
  f.A = np.np_after;
  f.W = prev(band(was, np.np_after));
  f.B = np.np_before;
  f.E = rasp::indicator(next(emb.pos), Cmp::kEq, 0.0);
  f.BY = next(band(by, np.np_before));
  f.TO_NP = next(band(to, np.np_before));
  f.TO_INF = next(band(to, next(f.has[static_cast<int>(PosCode::kVInf)])));
  f.THAT = next(that);
  f.by_after = exists_after(by, clause_id);
  f.to_after = exists_after(to, clause_id);
  Sequence junction = band(np.np_first, prev(np.np_any));
  f.junction_after = exists_after(junction, clause_id);
  return f;
}

Sequence indicator_for(Template t, const Features& f) {
  auto h = [&f](PosCode c) { return f.has[static_cast<int>(c)]; };
  switch (t) {
    case Template::kTransOmissibleP1:
      return band(band(f.A, h(PosCode::kVTransOmissible)), f.E);
    case Template::kTransOmissibleP2:
      return band(band(f.A, h(PosCode::kVTransOmissible)), f.B);
    case Template::kTransOmissiblePpP1:
      return band(band(f.W, h(PosCode::kVTransOmissiblePp)), f.E);
    case Template::kTransOmissiblePpP2:
      return band(band(f.W, h(PosCode::kVTransOmissiblePp)), f.BY);
    case Template::kTransNotOmissible:
      return band(band(f.A, h(PosCode::kVTransNotOmissible)), f.B);
    case Template::kTransNotOmissiblePpP1:
      return band(band(f.W, h(PosCode::kVTransNotOmissiblePp)), f.E);
    case Template::kTransNotOmissiblePpP2:
      return band(band(f.W, h(PosCode::kVTransNotOmissiblePp)), f.BY);
    case Template::kCpTaking:
      return band(band(f.A, h(PosCode::kVCpTaking)), f.THAT);
    case Template::kInfTaking:
      return band(band(f.A, h(PosCode::kVInfTaking)), f.TO_INF);
    case Template::kUnaccP1:
      return band(band(f.A, h(PosCode::kVUnacc)), f.B);
    case Template::kUnaccP2:
      return band(band(f.A, h(PosCode::kVUnacc)), f.E);
    case Template::kUnaccPpP1:
      return band(band(f.W, h(PosCode::kVUnaccPp)), f.E);
    case Template::kUnaccPpP2:
      return band(band(f.W, h(PosCode::kVUnaccPp)), f.BY);
    case Template::kUnerg:
      return band(band(f.A, h(PosCode::kVUnerg)), f.E);
    case Template::kDatP1:
      return band(band(band(f.A, h(PosCode::kVDat)), band(f.B, f.to_after)),
                  bnot(f.junction_after));
    case Template::kDatP2:
      return band(band(f.A, h(PosCode::kVDat)), band(f.B, f.junction_after));
    case Template::kDatPpP1:
      return band(band(f.W, h(PosCode::kVDatPp)), band(f.TO_NP, bnot(f.by_after)));
    case Template::kDatPpP2:
      return band(band(f.W, h(PosCode::kVDatPp)), band(f.TO_NP, f.by_after));
    case Template::kDatPpP3:
      return band(band(f.W, h(PosCode::kVDatPp)), band(f.B, bnot(f.by_after)));
    case Template::kDatPpP4:
      return band(band(f.W, h(PosCode::kVDatPp)), band(f.B, f.by_after));
    case Template::kNone:
      break;
  }
  return Sequence::fill(f.A.size(), 0.0);
}

Sequence clause_mask(const Sequence& clause_id, const Sequence& that_mask,
                     std::size_t c) {
  Sequence in = rasp::indicator(clause_id, Cmp::kEq, static_cast<double>(c));
  return band(in, bnot(that_mask));
}

Sequence that_boundaries(const Embedding& emb) {
  return band(pos_is(emb, PosCode::kThat),
              prev(has_code(emb, PosCode::kVCpTaking)));
}

Sequence clause_ids(const Sequence& that_mask) {
  Sequence idx = Sequence::indices(that_mask.size());
  return rasp::selector_width(rasp::select(that_mask, 1, Cmp::kEq) &
                              rasp::select(idx, idx, Cmp::kLe));
}

// Mean over earlier positions times their count.
Sequence prefix_sum_excl(const Sequence& w) {
  Sequence idx = Sequence::indices(w.size());
  auto before = rasp::select(idx, idx, Cmp::kLt);
  Sequence sum = rasp::aggregate(before, w) * rasp::selector_width(before);
  return rasp::map(sum, [](const rasp::Value& v) {
    return rasp::Value(std::round(std::get<double>(v)));
  });
}

std::string clause_text(const std::vector<std::string>& tokens,
                        const ClauseRange& r) {
  std::string out;
  for (std::size_t i = r.begin; i <= r.last && i < tokens.size(); ++i) {
    if (i > r.begin) out += ' ';
    out += tokens[i];
  }
  return out;
}

Template winner(const Features& f, const Sequence& mask,
                std::vector<Template>* fired, std::size_t* verb) {
  Template best = Template::kNone;
  Sequence best_ind;
  for (Template t : kCheckOrder) {
    Sequence ind = band(indicator_for(t, f), mask);
    double any = rasp::aggregate_num(rasp::select_row(ind, 1.0, Cmp::kEq), 1);
    if (any == 1) {
      best = t;
      best_ind = ind;
      if (fired) fired->push_back(t);
    }
  }
  if (best != Template::kNone && verb) {
    rasp::Row row = rasp::select_row(best_ind, 1.0, Cmp::kEq);
    if (rasp::width(row) != 1) {
      throw UnsupportedSentence(std::string(template_name(best)) +
                                " fired at more than one position");
    }
    *verb = static_cast<std::size_t>(
        rasp::aggregate_num(row, Sequence::indices(best_ind.size())));
  }
  return best;
}

}  // namespace

std::string_view template_name(Template t) {
  for (const auto& row : kTemplates) {
    if (row.t == t) return row.name;
  }
  return "";
}

std::optional<Template> parse_template(std::string_view name) {
  for (const auto& row : kTemplates) {
    if (name == row.name) return row.t;
  }
  return std::nullopt;
}

int template_size(Template t) {
  for (const auto& row : kTemplates) {
    if (row.t == t) return row.size;
  }
  return 0;
}

const std::vector<RelationSpec>& template_relations(Template t) {
  static const std::vector<std::vector<RelationSpec>> table = [] {
    std::vector<std::vector<RelationSpec>> v(kTemplateCount);
    auto set = [&v](Template t, std::vector<RelationSpec> r) {
      v[static_cast<std::size_t>(t)] = std::move(r);
    };
    set(Template::kTransOmissibleP1, {noun("agent", 1)});
    set(Template::kTransOmissibleP2, {noun("agent", 1), noun("theme", 2)});
    set(Template::kTransOmissiblePpP1, {noun("theme", 1)});
    set(Template::kTransOmissiblePpP2, {noun("theme", 1), noun("agent", 2)});
    set(Template::kTransNotOmissible, {noun("agent", 1), noun("theme", 2)});
    set(Template::kTransNotOmissiblePpP1, {noun("theme", 1)});
    set(Template::kTransNotOmissiblePpP2, {noun("theme", 1), noun("agent", 2)});
    set(Template::kCpTaking,
        {noun("agent", 1), {"ccomp", RelationSpec::Target::kNextClauseVerb, 0}});
    set(Template::kInfTaking,
        {noun("agent", 1), {"xcomp", RelationSpec::Target::kSecondVerb, 0}});
    set(Template::kUnaccP1, {noun("agent", 1), noun("theme", 2)});
    set(Template::kUnaccP2, {noun("theme", 1)});
    set(Template::kUnaccPpP1, {noun("theme", 1)});
    set(Template::kUnaccPpP2, {noun("theme", 1), noun("agent", 2)});
    set(Template::kUnerg, {noun("agent", 1)});
    set(Template::kDatP1, {noun("agent", 1), noun("theme", 2), noun("recipient", 3)});
    set(Template::kDatP2, {noun("agent", 1), noun("recipient", 2), noun("theme", 3)});
    set(Template::kDatPpP1, {noun("theme", 1), noun("recipient", 2)});
    set(Template::kDatPpP2,
        {noun("theme", 1), noun("recipient", 2), noun("agent", 3)});
    set(Template::kDatPpP3, {noun("recipient", 1), noun("theme", 2)});
    set(Template::kDatPpP4,
        {noun("recipient", 1), noun("theme", 2), noun("agent", 3)});
    return v;
  }();
  return table[static_cast<std::size_t>(t)];
}

const std::vector<RelationSpec>& inf_relations() {
  static const std::vector<RelationSpec> r{noun("agent", 1)};
  return r;
}

NpMasks build_np_masks(const Embedding& emb) {
  const Sequence& pos = emb.pos;
  Sequence idx = Sequence::indices(pos.size());
  NpMasks m;
  auto np_det_mask = rasp::select(code(PosCode::kCommonNoun), pos, Cmp::kEq) &
                     rasp::select(pos, code(PosCode::kDet), Cmp::kEq) &
                     rasp::select(idx + 1, idx, Cmp::kEq);
  m.np_det = rasp::aggregate(np_det_mask, 1);
  auto np_prop_mask = rasp::select(code(PosCode::kProperNoun), pos, Cmp::kEq) &
                      rasp::select(idx, idx, Cmp::kEq);
  m.np_prop = rasp::aggregate(np_prop_mask, 1);
  m.np_any = bor(m.np_det, m.np_prop);
  auto det_first_mask = rasp::select(code(PosCode::kDet), pos, Cmp::kEq) &
                        rasp::select(pos, code(PosCode::kCommonNoun), Cmp::kEq) &
                        rasp::select(idx - 1, idx, Cmp::kEq);
  m.np_first = bor(rasp::aggregate(det_first_mask, 1), m.np_prop);
  m.np_after = prev(m.np_any);
  m.np_before = next(m.np_first);
  return m;
}

NoPpMask build_no_pp_np_mask(const Embedding& emb) {
  const Sequence& pos = emb.pos;
  Sequence idx = Sequence::indices(pos.size());
  NpMasks np = build_np_masks(emb);
  Sequence pp = pos_is(emb, PosCode::kPp);
  auto diag = rasp::select(idx, idx, Cmp::kEq);
  Sequence one_after = rasp::aggregate(
      rasp::select(pp, 1, Cmp::kEq) & rasp::select(idx + 1, idx, Cmp::kEq), 1);
  Sequence two_after = rasp::aggregate(
      rasp::select(pp, 1, Cmp::kEq) & rasp::select(idx + 2, idx, Cmp::kEq), 1);
  auto one_after_mask = rasp::select(one_after, 1, Cmp::kEq) & diag;
  auto two_after_mask = rasp::select(two_after, 1, Cmp::kEq) & diag;
  auto det_diag = rasp::select(np.np_det, 1, Cmp::kEq) & diag;
  auto prop_diag = rasp::select(np.np_prop, 1, Cmp::kEq) & diag;
  NoPpMask out;
  out.mask = 1 - rasp::aggregate((one_after_mask & prop_diag) | (two_after_mask & det_diag), 1);
  Sequence counted = np.np_any * out.mask;
  out.nps_without_pp_prefix_indices =
      rasp::selector_width(rasp::select(counted, 1, Cmp::kEq) &
                           rasp::select(idx, idx, Cmp::kLe)) *
      counted;
  return out;
}

std::vector<ClauseRange> segment_clauses(const Embedding& emb) {
  const std::size_t n = emb.pos.size();
  std::vector<ClauseRange> out;
  if (n == 0) return out;
  Sequence that = that_boundaries(emb);
  Sequence ids = clause_ids(that);
  for (std::size_t i = 0; i < n; ++i) {
    if (that.num(i) == 1) continue;
    auto c = static_cast<std::size_t>(ids.num(i));
    if (c >= out.size()) {
      out.resize(c + 1, ClauseRange{i, i});
      out[c].begin = i;
    }
    out[c].last = i;
  }
  return out;
}

rasp::Sequence template_indicator(Template t, const Embedding& emb,
                                  const NpMasks& np,
                                  const rasp::Sequence& clause_id) {
  return indicator_for(t, features(emb, np, clause_id));
}

Template match_templates(const Embedding& emb, const NpMasks& np,
                         const rasp::Sequence& clause_id,
                         const ClauseRange& clause,
                         std::vector<Template>* fired) {
  Features f = features(emb, np, clause_id);
  Sequence that = that_boundaries(emb);
  Sequence mask = clause_mask(clause_id, that, static_cast<std::size_t>(clause_id.num(clause.begin)));
  return winner(f, mask, fired, nullptr);
}

EncoderState encode(const std::vector<std::string>& tokens,
                    const Lexicon& lexicon) {
  if (tokens.empty()) throw UnsupportedSentence("empty sentence");
  EncoderState s;
  s.tokens = tokens;
  s.emb = lexicon.embed(tokens);
  const std::size_t n = tokens.size();
  std::vector<std::string> stems;
  for (const auto& t : tokens) stems.push_back(lexicon.normalize_nv(t));
  s.stems = Sequence::symbolic(std::move(stems));
  s.np = build_np_masks(s.emb);
  s.no_pp = build_no_pp_np_mask(s.emb);
  s.noun_mask = s.np.np_any;
  s.pp_mask = pos_is(s.emb, PosCode::kPp);
  Sequence the = rasp::map(Sequence::symbolic(tokens), [](const rasp::Value& v) {
    return rasp::Value(std::get<std::string>(v) == "the" ? 1.0 : 0.0);
  });
  s.definite = band(s.np.np_det, prev(the));
  s.that_mask = that_boundaries(s.emb);
  s.clause_id = clause_ids(s.that_mask);

  Features f = features(s.emb, s.np, s.clause_id);
  auto ranges = segment_clauses(s.emb);
  std::vector<double> weight(n, 0.0);
  for (std::size_t c = 0; c < ranges.size(); ++c) {
    Clause cl;
    cl.range = ranges[c];
    s.fired.emplace_back();
    cl.tmpl = winner(f, clause_mask(s.clause_id, s.that_mask, c), &s.fired.back(), &cl.verb);
    if (cl.tmpl == Template::kNone) {
      throw UnsupportedSentence("no verb template matches clause \"" +
                                clause_text(tokens, cl.range) + "\"");
    }
    if (cl.tmpl == Template::kCpTaking && c + 1 == ranges.size()) {
      throw UnsupportedSentence("cp clause without a complement");
    }
    weight[cl.verb] = 1 + static_cast<double>(template_relations(cl.tmpl).size());
    if (cl.tmpl == Template::kInfTaking) {
      cl.verb2 = cl.verb + 2;
      weight[*cl.verb2] = 1 + static_cast<double>(inf_relations().size());
    }
    s.clauses.push_back(cl);
  }
  Sequence verb_items = Sequence::numeric(std::move(weight));
  s.item_weight = verb_items + s.pp_mask;
  // nmod and relation groups are 7 tokens with their separator, verb
  // predicates 5.
  Sequence is_verb = rasp::indicator(verb_items, Cmp::kGt, 0.0);
  s.token_weight = s.pp_mask * 7 + is_verb * 5 + (verb_items - is_verb) * 7;
  s.item_cum = prefix_sum_excl(s.item_weight);
  s.token_cum = prefix_sum_excl(s.token_weight);
  Sequence idx = Sequence::indices(n);
  s.noun_rank = rasp::selector_width(rasp::select(s.noun_mask, 1, Cmp::kEq) &
                                     rasp::select(idx, idx, Cmp::kLe)) *
                s.noun_mask;
  return s;
}

}  // namespace rr
