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


#include "rr/decoder.h"

#include <cmath>
#include <string>
#include <utility>

#include "rr/error.h"

namespace rr {

namespace {

using rasp::Cmp;
using rasp::Row;
using rasp::Sequence;

bool is_relation_name(const std::string& t) {
  return t == "agent" || t == "theme" || t == "recipient" || t == "xcomp" ||
         t == "ccomp";
}

std::string index_token(double v) {
  return std::to_string(static_cast<long long>(std::llround(v)));
}

double at_num(const Sequence& seq, double pos) {
  return rasp::aggregate_num(
      rasp::select_row(Sequence::indices(seq.size()), pos, Cmp::kEq), seq);
}

std::string at_sym(const Sequence& seq, double pos) {
  return std::get<std::string>(rasp::aggregate(
      rasp::select_row(Sequence::indices(seq.size()), pos, Cmp::kEq), seq));
}

double count_of(const Sequence& mask) {
  return rasp::width(rasp::select_row(mask, 1.0, Cmp::kEq));
}

std::string separator_after(double item, double total) {
  return item + 1 < total ? "AND" : std::string(kEndMarker);
}

// Body item under construction.
struct Cursor {
  double item = 0;
  double total = 0;
  std::size_t pos = 0;
  double sub = 0;
  double offset = 0;
};

Cursor body_cursor(const DecoderState& st, const EncoderState& enc) {
  const std::size_t n = enc.size();
  Cursor c;
  c.item = st.ands;
  c.total = at_num(enc.item_cum, double(n - 1)) + at_num(enc.item_weight, double(n - 1));
  Sequence end = enc.item_cum + enc.item_weight;
  Row row = rasp::select_row(enc.item_cum, c.item, Cmp::kLe) &
            rasp::select_row(end, c.item, Cmp::kGt);
  if (rasp::width(row) != 1) throw DecodeError("body item out of range");
  c.pos = static_cast<std::size_t>(rasp::aggregate_num(row, Sequence::indices(n)));
  c.sub = c.item - rasp::aggregate_num(row, enc.item_cum);
  double done = rasp::aggregate_num(row, enc.token_cum) +
                (c.sub > 0 ? 5 + 7 * (c.sub - 1) : 0);
  c.offset = st.output_tokens_excluding_asterisks - 5 * count_of(enc.noun_mask) - done;
  return c;
}

const Clause& clause_at(const EncoderState& enc, std::size_t pos) {
  auto c = static_cast<std::size_t>(at_num(enc.clause_id, double(pos)));
  if (c >= enc.clauses.size()) throw DecodeError("position outside any clause");
  return enc.clauses[c];
}

double noun_slot(const EncoderState& enc, std::size_t verb, int slot,
                 bool ablate) {
  const std::size_t n = enc.size();
  Sequence idx = Sequence::indices(n);
  Sequence mask = ablate ? enc.noun_mask : enc.noun_mask * enc.no_pp.mask;
  const Sequence& rank = ablate ? enc.noun_rank : enc.no_pp.nps_without_pp_prefix_indices;
  Row counted = rasp::select_row(mask, 1.0, Cmp::kEq);
  double before = rasp::width(counted & rasp::select_row(idx, double(verb), Cmp::kLt));
  double target = slot == 1 ? before : before + (slot - 1);
  double clause = at_num(enc.clause_id, double(verb));
  Row row = rasp::select_row(rank, target, Cmp::kEq) & counted &
            rasp::select_row(enc.clause_id, clause, Cmp::kEq);
  if (rasp::width(row) != 1) {
    throw DecodeError("no noun for relation slot " + std::to_string(slot));
  }
  return rasp::aggregate_num(row, idx);
}

}  // namespace

DecoderState DecoderState::build(const std::vector<std::string>& input,
                                 const std::vector<std::string>& output,
                                 const Lexicon& lexicon) {
  DecoderState st;
  st.combined = input;
  st.combined.insert(st.combined.end(), output.begin(), output.end());
  const std::size_t n = st.combined.size();
  const double last = double(n) - 1;
  Sequence toks = Sequence::symbolic(st.combined);
  Sequence idx = Sequence::indices(n);

  Row pipe_row = rasp::select_row(toks, std::string(kPipe), Cmp::kEq);
  st.pipes = rasp::width(pipe_row);
  if (st.pipes > 1) throw DecodeError("more than one \"|\"");
  double pipe_pos = st.pipes == 1 ? rasp::aggregate_num(pipe_row, idx) : double(n);
  st.input_mask = rasp::indicator(idx, Cmp::kLt, pipe_pos);
  st.output_mask = rasp::indicator(idx, Cmp::kGt, pipe_pos);
  Row out_row = rasp::select_row(st.output_mask, 1.0, Cmp::kEq);

  auto in_len = static_cast<std::size_t>(pipe_pos);
  Embedding in_emb = lexicon.embed(std::vector<std::string>(st.combined.begin(), st.combined.begin() + in_len));
  std::vector<std::string> tail(st.combined.begin() + in_len, st.combined.end());
  Embedding out_emb = lexicon.embed_output(tail);
  std::vector<double> nv(n, 0.0);
  std::vector<double> pp(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double p = i < in_len ? in_emb.pos.num(i) : out_emb.pos.num(i - in_len);
    bool verb = i < in_len && is_verb_code(static_cast<PosCode>(static_cast<int>(p)));
    nv[i] = (p == code(PosCode::kCommonNoun) || p == code(PosCode::kProperNoun) ||
             p == code(PosCode::kVNormalizedInOutput) || verb)
                ? 1
                : 0;
    pp[i] = p == code(PosCode::kPp) && i < in_len ? 1 : 0;
  }
  Sequence nv_seq = Sequence::numeric(nv);
  st.nv_in_input_count = rasp::width(rasp::select_row(st.input_mask * nv_seq, 1.0, Cmp::kEq));
  st.nv_in_output_count = rasp::width(rasp::select_row(st.output_mask * nv_seq, 1.0, Cmp::kEq));
  st.pps_in_input_count = count_of(Sequence::numeric(pp));

  Sequence rel = rasp::map(toks, [](const rasp::Value& v) {
    return rasp::Value(is_relation_name(std::get<std::string>(v)) ? 1.0 : 0.0);
  });
  Sequence nmod = rasp::map(toks, [](const rasp::Value& v) {
    return rasp::Value(std::get<std::string>(v).rfind("nmod . ", 0) == 0 ? 1.0 : 0.0);
  });
  st.agent_theme_recipient_xcomp_output_count = rasp::width(out_row & rasp::select_row(rel, 1.0, Cmp::kEq));
  st.nmods_and_pps_in_output_count = rasp::width(out_row & rasp::select_row(nmod, 1.0, Cmp::kEq));

  Row star = rasp::select_row(toks, std::string("*"), Cmp::kEq);
  st.semicolons = rasp::width(out_row & rasp::select_row(toks, std::string(";"), Cmp::kEq));
  st.ands = rasp::width(out_row & rasp::select_row(toks, std::string("AND"), Cmp::kEq));
  st.output_tokens_excluding_asterisks = rasp::width(out_row & !star);
  st.last_is_star = n > 0 && at_sym(toks, last) == "*";
  return st;
}

std::string intro_phase_token(const DecoderState& st, const EncoderState& enc) {
  double rank = st.semicolons + 1;
  Row row = rasp::select_row(enc.noun_rank, rank, Cmp::kEq);
  if (rasp::width(row) != 1) throw DecodeError("noun introduction out of range");
  double pos = rasp::aggregate_num(row, Sequence::indices(enc.size()));
  double offset = st.output_tokens_excluding_asterisks - 5 * st.semicolons;
  switch (static_cast<int>(offset)) {
    case 0:
      if (at_num(enc.definite, pos) == 1 && !st.last_is_star) return "*";
      return at_sym(enc.stems, pos);
    case 1: return "(";
    case 2: return index_token(pos);
    case 3: return ")";
    case 4: return ";";
  }
  throw DecodeError("intro offset out of range");
}

std::string relation_phase_token(const DecoderState& st, const EncoderState& enc,
                                 const DecodeOptions& opts) {
  Cursor c = body_cursor(st, enc);
  const Clause& cl = clause_at(enc, c.pos);
  auto off = static_cast<int>(c.offset);
  if (c.sub == 0) {
    switch (off) {
      case 0: return at_sym(enc.stems, double(c.pos));
      case 1: return "(";
      case 2: return index_token(double(c.pos));
      case 3: return ")";
      case 4: return separator_after(c.item, c.total);
    }
    throw DecodeError("verb offset out of range");
  }
  const auto& rels = c.pos == cl.verb ? template_relations(cl.tmpl) : inf_relations();
  auto r = static_cast<std::size_t>(c.sub) - 1;
  if (r >= rels.size()) throw DecodeError("relation index out of range");
  const RelationSpec& spec = rels[r];
  switch (off) {
    case 0: return spec.name;
    case 1: return "(";
    case 2: return index_token(double(c.pos));
    case 3: return ",";
    case 4: {
      switch (spec.target) {
        case RelationSpec::Target::kNoun:
          return index_token(noun_slot(enc, c.pos, spec.slot, opts.ablate_no_pp_rule));
        case RelationSpec::Target::kSecondVerb:
          return index_token(double(*cl.verb2));
        case RelationSpec::Target::kNextClauseVerb: {
          auto ci = static_cast<std::size_t>(at_num(enc.clause_id, double(c.pos)));
          return index_token(double(enc.clauses.at(ci + 1).verb));
        }
      }
      break;
    }
    case 5: return ")";
    case 6: return separator_after(c.item, c.total);
  }
  throw DecodeError("relation offset out of range");
}

std::string nmod_phase_token(const DecoderState& st, const EncoderState& enc) {
  Cursor c = body_cursor(st, enc);
  double p = double(c.pos);
  switch (static_cast<int>(c.offset)) {
    case 0: return "nmod . " + at_sym(enc.stems, p);
    case 1: return "(";
    case 2: return index_token(p - 1);
    case 3: return ",";
    case 4: {
      double det = at_num(enc.emb.pos, p + 1) == code(PosCode::kDet) ? 1 : 0;
      return index_token(p + 1 + det);
    }
    case 5: return ")";
    case 6: return separator_after(c.item, c.total);
  }
  throw DecodeError("nmod offset out of range");
}

std::string next_token(const DecoderState& st, const EncoderState& enc,
                       const DecodeOptions& opts) {
  if (st.pipes == 0) return std::string(kPipe);
  if (st.semicolons < count_of(enc.noun_mask)) return intro_phase_token(st, enc);
  const std::size_t n = enc.size();
  double total = at_num(enc.item_cum, double(n - 1)) + at_num(enc.item_weight, double(n - 1));
  if (st.ands >= total) return std::string(kEndMarker);
  Cursor c = body_cursor(st, enc);
  if (at_num(enc.pp_mask, double(c.pos)) == 1) return nmod_phase_token(st, enc);
  return relation_phase_token(st, enc, opts);
}

std::vector<std::string> decode_tokens(const std::vector<std::string>& tokens,
                                       const Lexicon& lexicon,
                                       const DecodeOptions& opts) {
  EncoderState enc = encode(tokens, lexicon);
  std::vector<std::string> tail;
  for (std::size_t step = 0; step < opts.max_steps; ++step) {
    if (tokens.size() + tail.size() + 1 > opts.max_len) {
      throw DecodeError("sequence exceeds maximum length " + std::to_string(opts.max_len));
    }
    DecoderState st = DecoderState::build(tokens, tail, lexicon);
    std::string t = next_token(st, enc, opts);
    if (t == kEndMarker) {
      if (!tail.empty()) tail.erase(tail.begin());
      return tail;
    }
    tail.push_back(std::move(t));
  }
  throw DecodeError("maximum decode steps (" + std::to_string(opts.max_steps) +
                    ") exceeded");
}

std::string decode_text(const std::vector<std::string>& tokens,
                        const Lexicon& lexicon, const DecodeOptions& opts) {
  return join(decode_tokens(tokens, lexicon, opts));
}

LogicalForm decode(const std::vector<std::string>& tokens,
                   const Lexicon& lexicon, const DecodeOptions& opts) {
  return parse_lf(decode_text(tokens, lexicon, opts));
}

LogicalForm decode_ablated(const std::vector<std::string>& tokens,
                           const Lexicon& lexicon, DecodeOptions opts) {
  opts.ablate_no_pp_rule = true;
  return decode(tokens, lexicon, opts);
}

}  // namespace rr
