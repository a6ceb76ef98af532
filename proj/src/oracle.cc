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


#include "rr/oracle.h"

#include <algorithm>
#include <iterator>
#include <map>
#include <set>
#include <sstream>
#include <tuple>
#include <utility>

#include "rr/error.h"

namespace rr {

namespace {

bool is_clause(const std::string& label) {
  return label == "<s1>" || label == "<s2>" || label == "<s3>" || label == "<s4>" ||
         label == "<vp_internal>";
}

bool is_verb_leaf(const ParseTree& t) {
  return t.is_leaf() && t.label.rfind("<v_", 0) == 0;
}

bool is_noun_leaf(const ParseTree& t) {
  return t.is_leaf() && (t.label == "<common_noun>" || t.label == "<proper_noun>");
}

// Head noun position of an <np>, <np_det>, <np_prop> or <np_pp>.
std::size_t head(const ParseTree& np) {
  if (np.label == "<np>" || np.label == "<np_prop>") return head(np.children.at(0));
  if (np.label == "<np_det>") return np.children.at(1).begin;
  if (np.label == "<np_pp>") return head(np.children.at(0));
  if (np.label == "<proper_noun>") return np.begin;
  throw GrammarError("not a noun phrase: " + np.label);
}

const ParseTree& top_clause(const ParseTree& start) {
  const ParseTree* t = &start;
  while (!is_clause(t->label)) {
    if (t->children.empty()) throw GrammarError("no clause under " + start.label);
    t = &t->children.front();
  }
  return *t;
}

// The node whose children hold the clause's verb leaf.
const ParseTree& frame_node(const ParseTree& clause) {
  if (clause.label == "<vp_internal>") return clause;
  const ParseTree* t = &clause.children.at(1);
  while (true) {
    for (const auto& c : t->children) {
      if (is_verb_leaf(c)) return *t;
    }
    if (t->children.size() != 1) throw GrammarError("no verb under " + clause.label);
    t = &t->children.front();
  }
}

const ParseTree& verb_leaf(const ParseTree& frame) {
  for (const auto& c : frame.children) {
    if (is_verb_leaf(c)) return c;
  }
  throw GrammarError("frame without verb");
}

std::size_t clause_verb(const ParseTree& start) {
  return verb_leaf(frame_node(top_clause(start))).begin;
}

struct Args {
  std::size_t subject = 0;
  std::vector<std::size_t> objects;  // bare nps after the verb
  std::optional<std::size_t> iobj;   // "to np"
  std::optional<std::size_t> by;     // "by np"
  std::optional<std::size_t> inf;    // v_inf position
  const ParseTree* cp = nullptr;     // embedded <start>
};

Args frame_args(const ParseTree& clause, const ParseTree& frame) {
  Args a;
  a.subject = head(clause.children.at(0));
  bool after_by = false;
  for (const auto& c : frame.children) {
    if (c.label == "<np>") {
      if (after_by) {
        a.by = head(c);
      } else {
        a.objects.push_back(head(c));
      }
    } else if (c.label == "<pp_iobj>") {
      a.iobj = head(c.children.at(1));
    } else if (c.label == "<by>") {
      after_by = true;
    } else if (c.label == "<v_inf>") {
      a.inf = c.begin;
    } else if (c.label == "<start>") {
      a.cp = &c;
    }
  }
  return a;
}

struct Item {
  std::size_t pos;
  std::vector<std::string> parts;
};

std::string atom(const std::string& rel, std::size_t l, std::size_t r) {
  return rel + " ( " + std::to_string(l) + " , " + std::to_string(r) + " )";
}

std::string pred(const std::string& label, std::size_t i) {
  return label + " ( " + std::to_string(i) + " )";
}

void verb_items(const ParseTree& clause, const Lexicon& lexicon,
                std::vector<Item>& items) {
  const ParseTree& frame = frame_node(clause);
  const ParseTree& v = verb_leaf(frame);
  const std::string cat = strip_brackets(v.label);
  Args a = frame_args(clause, frame);
  auto obj = [&a](std::size_t k) {
    if (k >= a.objects.size()) throw GrammarError("missing object");
    return a.objects[k];
  };
  auto need = [](const std::optional<std::size_t>& x) {
    if (!x) throw GrammarError("missing argument");
    return *x;
  };
  const std::size_t p = v.begin;
  std::vector<std::string> rel;
  if (cat == "v_unerg" || cat == "v_trans_omissible_p1") {
    rel = {atom("agent", p, a.subject)};
  } else if (cat == "v_unacc_p1" || cat == "v_trans_omissible_p2" ||
             cat == "v_trans_not_omissible") {
    rel = {atom("agent", p, a.subject), atom("theme", p, obj(0))};
  } else if (cat == "v_dat_p1") {
    rel = {atom("agent", p, a.subject), atom("theme", p, obj(0)),
           atom("recipient", p, need(a.iobj))};
  } else if (cat == "v_dat_p2") {
    rel = {atom("agent", p, a.subject), atom("recipient", p, obj(0)),
           atom("theme", p, obj(1))};
  } else if (cat == "v_cp_taking") {
    if (!a.cp) throw GrammarError("cp frame without clause");
    rel = {atom("agent", p, a.subject), atom("ccomp", p, clause_verb(*a.cp))};
  } else if (cat == "v_inf_taking") {
    std::size_t inf = need(a.inf);
    rel = {atom("agent", p, a.subject), atom("xcomp", p, inf)};
    items.push_back({inf,
                     {pred(lexicon.normalize_nv(frame.children.at(2).word), inf),
                      atom("agent", inf, a.subject)}});
  } else if (cat == "v_unacc_p2" || cat == "v_trans_omissible_pp_p1" ||
             cat == "v_trans_not_omissible_pp_p1" || cat == "v_unacc_pp_p1") {
    rel = {atom("theme", p, a.subject)};
  } else if (cat == "v_trans_omissible_pp_p2" || cat == "v_trans_not_omissible_pp_p2" ||
             cat == "v_unacc_pp_p2") {
    rel = {atom("theme", p, a.subject), atom("agent", p, need(a.by))};
  } else if (cat == "v_dat_pp_p1") {
    rel = {atom("theme", p, a.subject), atom("recipient", p, need(a.iobj))};
  } else if (cat == "v_dat_pp_p2") {
    rel = {atom("theme", p, a.subject), atom("recipient", p, need(a.iobj)),
           atom("agent", p, need(a.by))};
  } else if (cat == "v_dat_pp_p3") {
    rel = {atom("recipient", p, a.subject), atom("theme", p, obj(0))};
  } else if (cat == "v_dat_pp_p4") {
    rel = {atom("recipient", p, a.subject), atom("theme", p, obj(0)),
           atom("agent", p, need(a.by))};
  } else {
    throw GrammarError("no frame for " + cat);
  }
  Item it{p, {pred(lexicon.normalize_nv(v.word), p)}};
  it.parts.insert(it.parts.end(), rel.begin(), rel.end());
  items.push_back(std::move(it));
}

void walk(const ParseTree& t, const Lexicon& lexicon, std::vector<Item>& items,
          std::vector<std::string>& nouns) {
  if (is_clause(t.label)) verb_items(t, lexicon, items);
  if (t.label == "<np_pp>") {
    const ParseTree& pp = t.children.at(1);
    items.push_back({pp.begin, {atom("nmod . " + pp.word, head(t.children.at(0)),
                                     head(t.children.at(2)))}});
  }
  if (t.label == "<np_det>") {
    const ParseTree& n = t.children.at(1);
    std::string star = t.children.at(0).word == "the" ? "* " : "";
    nouns[n.begin] = star + pred(n.word, n.begin);
  }
  if (t.label == "<np_prop>") {
    const ParseTree& n = t.children.at(0);
    nouns[n.begin] = pred(n.word, n.begin);
  }
  for (const auto& c : t.children) walk(c, lexicon, items, nouns);
}

void collect_verbs(const ParseTree& t, std::vector<const ParseTree*>& out) {
  if (is_verb_leaf(t)) out.push_back(&t);
  for (const auto& c : t.children) collect_verbs(c, out);
}

void collect_nouns(const ParseTree& t, std::vector<std::size_t>& out) {
  if (is_noun_leaf(t)) out.push_back(t.begin);
  for (const auto& c : t.children) collect_nouns(c, out);
}

bool contains_label(const ParseTree& t, const std::string& label) {
  if (t.label == label) return true;
  for (const auto& c : t.children) {
    if (contains_label(c, label)) return true;
  }
  return false;
}

std::vector<Atom> atom_diff(std::vector<Atom> a, std::vector<Atom> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<Atom> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

std::string lf_oracle_text(const ParseTree& tree, const Lexicon& lexicon) {
  std::vector<Item> items;
  std::vector<std::string> nouns(tree.end);
  walk(tree, lexicon, items, nouns);
  std::ostringstream out;
  bool first = true;
  for (const auto& n : nouns) {
    if (n.empty()) continue;
    out << (first ? "" : " ; ") << n;
    first = false;
  }
  std::stable_sort(items.begin(), items.end(),
                   [](const Item& a, const Item& b) { return a.pos < b.pos; });
  bool first_body = true;
  for (const auto& it : items) {
    for (const auto& part : it.parts) {
      if (first_body) {
        out << (first ? "" : " ; ") << part;
        first_body = false;
        first = false;
      } else {
        out << " AND " << part;
      }
    }
  }
  return out.str();
}

LogicalForm lf_oracle(const ParseTree& tree, const Lexicon& lexicon) {
  return parse_lf(lf_oracle_text(tree, lexicon));
}

std::vector<std::string> get_verbs(const ParseTree& tree) {
  std::vector<const ParseTree*> stack{&tree};
  std::vector<std::string> verbs;
  while (!stack.empty()) {
    const ParseTree* node = stack.back();
    stack.pop_back();
    if (is_verb_leaf(*node)) verbs.push_back(strip_brackets(node->label));
    for (const auto& c : node->children) stack.push_back(&c);
  }
  return verbs;
}

bool has_cp(const ParseTree& tree) { return contains_label(tree, "<vp_external5>"); }

std::size_t verb_count(const ParseTree& tree) {
  std::vector<const ParseTree*> v;
  collect_verbs(tree, v);
  return v.size();
}

AgentSide get_agent_side(const ParseTree& tree) {
  static const std::set<std::string> left = {
      "v_trans_omissible_p1", "v_trans_omissible_p2", "v_trans_not_omissible",
      "v_cp_taking",          "v_inf_taking",         "v_unacc_p1",
      "v_unerg",              "v_inf",                "v_dat_p1",
      "v_dat_p2"};
  if (has_cp(tree)) throw PreconditionError("agent side is undefined for cp sentences");
  auto verbs = get_verbs(tree);
  if (verbs.empty()) throw PreconditionError("tree has no verb");
  return left.count(verbs.front()) ? AgentSide::kLeft : AgentSide::kRightOrMiddle;
}

bool subject_has_pp(const ParseTree& tree) {
  const ParseTree& clause = top_clause(tree);
  const ParseTree& np = clause.children.at(0);
  return np.label == "<np>" && np.children.at(0).label == "<np_pp>";
}

std::size_t predict_attraction_error(const ParseTree& tree) {
  if (get_agent_side(tree) != AgentSide::kLeft) {
    throw PreconditionError("agent is not left of the verb");
  }
  if (!subject_has_pp(tree)) throw PreconditionError("subject has no pp");
  std::vector<const ParseTree*> verbs;
  collect_verbs(tree, verbs);
  std::size_t first_verb = verbs.front()->begin;
  for (const auto* v : verbs) first_verb = std::min(first_verb, v->begin);
  std::vector<std::size_t> nouns;
  collect_nouns(tree, nouns);
  std::optional<std::size_t> best;
  for (std::size_t n : nouns) {
    if (n < first_verb && (!best || n > *best)) best = n;
  }
  if (!best) throw PreconditionError("no noun before the verb");
  return *best;
}

ErrorDescriptor classify_error(const LogicalForm& expected, const LogicalForm& actual,
                               std::optional<std::size_t> predicted) {
  if (semantic_exact_match(expected, actual)) {
    throw PreconditionError("logical forms match; nothing to classify");
  }
  ErrorDescriptor d;
  d.missing = atom_diff(expected.atoms, actual.atoms);
  d.extra = atom_diff(actual.atoms, expected.atoms);
  auto terms = [](std::vector<Term> t) {
    std::sort(t.begin(), t.end(), [](const Term& a, const Term& b) {
      return std::tie(a.index, a.label, a.star) < std::tie(b.index, b.label, b.star);
    });
    return t;
  };
  d.intros_differ = terms(expected.intros) != terms(actual.intros);
  if (d.missing.size() == 1 && d.extra.size() == 1 && !d.intros_differ &&
      d.missing[0].relation == d.extra[0].relation &&
      d.missing[0].left == d.extra[0].left) {
    d.single_atom = true;
    d.relation = d.missing[0].relation;
    d.expected_right = d.missing[0].right;
    d.actual_right = d.extra[0].right;
    d.matches_prediction =
        predicted.has_value() && static_cast<std::size_t>(*d.actual_right) == *predicted;
  }
  return d;
}

std::string describe(const ErrorDescriptor& d) {
  std::ostringstream out;
  if (d.single_atom) {
    out << "single_atom relation=" << d.relation << " expected_right=" << *d.expected_right
        << " actual_right=" << *d.actual_right
        << " matches_prediction=" << (d.matches_prediction ? "true" : "false");
    return out.str();
  }
  out << "multi missing=" << d.missing.size() << " extra=" << d.extra.size()
      << " intros_differ=" << (d.intros_differ ? "true" : "false");
  return out.str();
}

}  // namespace rr
