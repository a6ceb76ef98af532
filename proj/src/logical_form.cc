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


#include "rr/logical_form.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <functional>
#include <set>
#include <sstream>
#include <tuple>
#include <utility>

#include "rr/error.h"

namespace rr {

namespace {

constexpr const char* kRelations[] = {"agent",     "theme",      "recipient",
                                      "xcomp",     "ccomp",      "nmod.in",
                                      "nmod.on",   "nmod.beside"};

std::vector<std::string> split_ws(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

int parse_index(const std::string& tok) {
  int v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size() || v < 0) {
    throw LfParseError("expected an index, got \"" + tok + "\"");
  }
  return v;
}

void expect(const std::vector<std::string>& toks, std::size_t i,
            const char* what) {
  if (i >= toks.size() || toks[i] != what) {
    throw LfParseError(std::string("expected \"") + what + "\" in group \"" +
                       [&] {
                         std::string s;
                         for (const auto& t : toks) s += (s.empty() ? "" : " ") + t;
                         return s;
                       }() + "\"");
  }
}

std::string print_relation(const std::string& rel) {
  if (rel.rfind("nmod.", 0) == 0) return "nmod . " + rel.substr(5);
  return rel;
}

}  // namespace

bool is_known_relation(std::string_view relation) {
  for (const char* r : kRelations) {
    if (relation == r) return true;
  }
  return false;
}

LogicalForm parse_lf(std::string_view text) {
  auto toks = split_ws(text);
  if (toks.empty()) throw LfParseError("empty logical form");
  std::vector<std::vector<std::string>> groups(1);
  std::vector<std::string> seps;
  for (const auto& t : toks) {
    if (t == ";" || t == "AND") {
      if (groups.back().empty()) throw LfParseError("empty group before \"" + t + "\"");
      seps.push_back(t);
      groups.emplace_back();
    } else {
      groups.back().push_back(t);
    }
  }
  if (groups.back().empty()) throw LfParseError("trailing separator");
  bool seen_and = false;
  for (const auto& s : seps) {
    if (s == "AND") seen_and = true;
    if (s == ";" && seen_and) throw LfParseError("\";\" after \"AND\"");
  }

  LogicalForm lf;
  std::set<int> indices;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const auto& grp = groups[g];
    bool prefix = g < seps.size() && seps[g] == ";";
    std::size_t i = 0;
    bool star = false;
    if (grp[i] == "*") {
      star = true;
      ++i;
    }
    if (i >= grp.size()) throw LfParseError("malformed group \"*\"");
    std::string head = grp[i++];
    if (head == "nmod") {
      expect(grp, i++, ".");
      if (i >= grp.size()) throw LfParseError("nmod without preposition");
      head = "nmod." + grp[i++];
    }
    expect(grp, i++, "(");
    if (i >= grp.size()) throw LfParseError("missing index in group");
    int left = parse_index(grp[i++]);
    if (i < grp.size() && grp[i] == ",") {
      ++i;
      if (star) throw LfParseError("\"*\" on a relation");
      if (i >= grp.size()) throw LfParseError("missing right index");
      int right = parse_index(grp[i++]);
      expect(grp, i++, ")");
      if (i != grp.size()) throw LfParseError("trailing tokens in relation");
      if (!is_known_relation(head)) throw LfParseError("unknown relation \"" + head + "\"");
      if (prefix) throw LfParseError("relation before \";\"");
      lf.body.push_back({false, lf.atoms.size()});
      lf.atoms.push_back({head, left, right});
    } else {
      expect(grp, i++, ")");
      if (i != grp.size()) throw LfParseError("trailing tokens in term");
      if (!indices.insert(left).second) {
        throw LfParseError("index " + std::to_string(left) + " introduced twice");
      }
      if (prefix) {
        if (lf.prefix_count != lf.intros.size()) {
          throw LfParseError("prefix term after body");
        }
        ++lf.prefix_count;
      } else {
        lf.body.push_back({true, lf.intros.size()});
      }
      lf.intros.push_back({head, star, left});
    }
  }
  for (const auto& a : lf.atoms) {
    for (int x : {a.left, a.right}) {
      if (!indices.count(x)) {
        throw LfParseError("dangling index " + std::to_string(x));
      }
    }
  }
  return lf;
}

std::string to_string(const LogicalForm& lf) {
  std::string out;
  auto term = [](const Term& t) {
    return std::string(t.star ? "* " : "") + t.label + " ( " +
           std::to_string(t.index) + " )";
  };
  for (std::size_t i = 0; i < lf.prefix_count; ++i) {
    out += term(lf.intros[i]) + " ; ";
  }
  for (std::size_t j = 0; j < lf.body.size(); ++j) {
    if (j) out += " AND ";
    const auto& ref = lf.body[j];
    if (ref.is_term) {
      out += term(lf.intros[ref.index]);
    } else {
      const Atom& a = lf.atoms[ref.index];
      out += print_relation(a.relation) + " ( " + std::to_string(a.left) +
             " , " + std::to_string(a.right) + " )";
    }
  }
  if (lf.body.empty() && out.size() >= 3) out.resize(out.size() - 3);
  return out;
}

bool semantic_exact_match(const LogicalForm& a, const LogicalForm& b) {
  if (a.intros.size() != b.intros.size() || a.atoms.size() != b.atoms.size()) {
    return false;
  }
  using Key = std::pair<std::string, bool>;
  std::map<Key, int> label_count;
  for (const auto& t : a.intros) ++label_count[{t.label, t.star}];
  for (const auto& t : b.intros) --label_count[{t.label, t.star}];
  for (const auto& [k, c] : label_count) {
    if (c != 0) return false;
  }
  std::map<std::string, int> rel_count;
  for (const auto& x : a.atoms) ++rel_count[x.relation];
  for (const auto& x : b.atoms) --rel_count[x.relation];
  for (const auto& [k, c] : rel_count) {
    if (c != 0) return false;
  }

  // Candidates per a-index, by label bucket; most constrained first.
  std::map<Key, std::vector<int>> bucket;
  for (const auto& t : b.intros) bucket[{t.label, t.star}].push_back(t.index);
  std::vector<const Term*> order;
  for (const auto& t : a.intros) order.push_back(&t);
  std::stable_sort(order.begin(), order.end(), [&](const Term* x, const Term* y) {
    return bucket[{x->label, x->star}].size() < bucket[{y->label, y->star}].size();
  });

  std::map<int, std::vector<const Atom*>> atoms_of;
  for (const auto& x : a.atoms) {
    atoms_of[x.left].push_back(&x);
    if (x.right != x.left) atoms_of[x.right].push_back(&x);
  }
  std::map<std::tuple<std::string, int, int>, int> remaining;
  for (const auto& x : b.atoms) ++remaining[{x.relation, x.left, x.right}];

  std::map<int, int> f;
  std::set<int> used;
  std::function<bool(std::size_t)> search = [&](std::size_t depth) -> bool {
    if (depth == order.size()) return true;
    const Term* t = order[depth];
    for (int cand : bucket[{t->label, t->star}]) {
      if (used.count(cand)) continue;
      f[t->index] = cand;
      used.insert(cand);
      std::vector<std::tuple<std::string, int, int>> taken;
      bool ok = true;
      for (const Atom* x : atoms_of[t->index]) {
        auto l = f.find(x->left);
        auto r = f.find(x->right);
        if (l == f.end() || r == f.end()) continue;
        auto key = std::make_tuple(x->relation, l->second, r->second);
        auto it = remaining.find(key);
        if (it == remaining.end() || it->second == 0) {
          ok = false;
          break;
        }
        --it->second;
        taken.push_back(key);
      }
      if (ok && search(depth + 1)) return true;
      for (const auto& key : taken) ++remaining[key];
      used.erase(cand);
      f.erase(t->index);
    }
    return false;
  };
  return search(0);
}

bool semantic_exact_match(std::string_view a, std::string_view b) {
  try {
    return semantic_exact_match(parse_lf(a), parse_lf(b));
  } catch (const LfParseError&) {
    return false;
  }
}

std::string normalize_whitespace(std::string_view text) {
  std::string out;
  for (const auto& t : split_ws(text)) {
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

bool string_exact_match(std::string_view a, std::string_view b) {
  return split_ws(a) == split_ws(b);
}

std::string normalize_lf_case(std::string_view text) {
  std::string out;
  for (auto t : split_ws(text)) {
    if (t != "AND") {
      for (char& ch : t) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    }
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

SemanticGraph to_graph(const LogicalForm& lf) {
  SemanticGraph g;
  for (const auto& t : lf.intros) g.nodes[t.index] = t.label;
  for (const auto& a : lf.atoms) {
    if (a.relation == "agent") {
      g.edges.push_back({a.right, a.left, a.relation});
    } else {
      g.edges.push_back({a.left, a.right, a.relation});
    }
  }
  return g;
}

}  // namespace rr
