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


#include "rr/grammar.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <unordered_set>
#include <utility>

#include "json.hpp"
#include "rr/assets.h"
#include "rr/error.h"

namespace rr {

namespace {

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

// Earley recognizer plus top-down tree extraction over the completed spans.
class ChartParser {
 public:
  ChartParser(const Grammar& g, const std::vector<std::string>& tokens,
              const Lexicon& lexicon)
      : g_(g), tokens_(tokens) {
    m_ = tokens.size();
    if (m_ > 0 && tokens.back() == ".") --m_;
    for (const auto& sym : g.symbols()) {
      id_[sym] = static_cast<int>(names_.size());
      names_.push_back(sym);
    }
    leaf_.resize(names_.size());
    for (std::size_t s = 0; s < names_.size(); ++s) leaf_[s] = g.is_leaf(names_[s]);
    rules_by_lhs_.resize(names_.size());
    for (std::size_t s = 0; s < names_.size(); ++s) {
      for (const auto& alt : g.alternatives(names_[s])) {
        Rule r{static_cast<int>(s), {}};
        for (const auto& c : alt) r.rhs.push_back(id_.at(c));
        rules_by_lhs_[s].push_back(static_cast<int>(rules_.size()));
        rules_.push_back(std::move(r));
      }
    }
    cats_.resize(m_);
    for (std::size_t k = 0; k < m_; ++k) {
      for (const auto& c : leaf_categories(lexicon.at(tokens[k]))) {
        auto it = id_.find(c);
        if (it != id_.end()) cats_[k].insert(it->second);
      }
    }
  }

  bool recognize() {
    const int start = id_.at(g_.start());
    std::vector<std::vector<Item>> sets(m_ + 1);
    std::vector<std::unordered_set<std::uint64_t>> seen(m_ + 1);
    auto add = [&](std::size_t i, Item it) {
      std::uint64_t key = (std::uint64_t(it.rule) << 40) | (std::uint64_t(it.dot) << 32) |
                          std::uint64_t(it.origin);
      if (seen[i].insert(key).second) sets[i].push_back(it);
    };
    for (int r : rules_by_lhs_[start]) add(0, {r, 0, 0});
    for (std::size_t i = 0; i <= m_; ++i) {
      for (std::size_t n = 0; n < sets[i].size(); ++n) {
        Item it = sets[i][n];
        const Rule& rule = rules_[it.rule];
        if (it.dot < static_cast<int>(rule.rhs.size())) {
          int sym = rule.rhs[it.dot];
          if (leaf_[sym]) {
            if (i < m_ && cats_[i].count(sym)) add(i + 1, {it.rule, it.dot + 1, it.origin});
          } else {
            for (int r : rules_by_lhs_[sym]) add(i, {r, 0, static_cast<int>(i)});
          }
        } else {
          completed_.insert(span_key(rule.lhs, it.origin, i));
          for (std::size_t p = 0; p < sets[it.origin].size(); ++p) {
            Item up = sets[it.origin][p];
            const Rule& ur = rules_[up.rule];
            if (up.dot < static_cast<int>(ur.rhs.size()) && ur.rhs[up.dot] == rule.lhs) {
              add(i, {up.rule, up.dot + 1, up.origin});
            }
          }
        }
      }
    }
    return m_ > 0 && completed_.count(span_key(start, 0, m_)) > 0;
  }

  ParseTree tree() const { return derive(id_.at(g_.start()), 0, m_); }

 private:
  struct Rule {
    int lhs;
    std::vector<int> rhs;
  };
  struct Item {
    int rule;
    int dot;
    int origin;
  };

  std::uint64_t span_key(int sym, std::size_t a, std::size_t b) const {
    return (std::uint64_t(sym) * (m_ + 1) + a) * (m_ + 1) + b;
  }

  bool spans(int sym, std::size_t a, std::size_t b) const {
    if (leaf_[sym]) return b == a + 1 && a < m_ && cats_[a].count(sym) > 0;
    return completed_.count(span_key(sym, a, b)) > 0;
  }

  bool match(const std::vector<int>& rhs, std::size_t idx, std::size_t a,
             std::size_t b, std::vector<std::size_t>& cuts) const {
    if (idx == rhs.size()) return a == b;
    for (std::size_t k = a + 1; k <= b; ++k) {
      if (!spans(rhs[idx], a, k)) continue;
      cuts.push_back(k);
      if (match(rhs, idx + 1, k, b, cuts)) return true;
      cuts.pop_back();
    }
    return false;
  }

  ParseTree derive(int sym, std::size_t a, std::size_t b) const {
    ParseTree t;
    t.label = names_[sym];
    t.begin = a;
    t.end = b;
    if (leaf_[sym]) {
      t.word = tokens_[a];
      return t;
    }
    for (int r : rules_by_lhs_[sym]) {
      std::vector<std::size_t> cuts;
      if (!match(rules_[r].rhs, 0, a, b, cuts)) continue;
      std::size_t from = a;
      for (std::size_t c = 0; c < cuts.size(); ++c) {
        t.children.push_back(derive(rules_[r].rhs[c], from, cuts[c]));
        from = cuts[c];
      }
      return t;
    }
    throw GrammarError("chart inconsistent at " + t.label);
  }

  const Grammar& g_;
  const std::vector<std::string>& tokens_;
  std::size_t m_ = 0;
  std::map<std::string, int, std::less<>> id_;
  std::vector<std::string> names_;
  std::vector<bool> leaf_;
  std::vector<Rule> rules_;
  std::vector<std::vector<int>> rules_by_lhs_;
  std::vector<std::set<int>> cats_;
  std::unordered_set<std::uint64_t> completed_;
};

void collect_keys(const ParseTree& t, std::set<std::string>& out) {
  if (t.is_leaf()) return;
  Grammar::Alternative rhs;
  for (const auto& c : t.children) rhs.push_back(c.label);
  out.insert(expansion_key(t.label, rhs));
  for (const auto& c : t.children) collect_keys(c, out);
}

std::size_t steps_to_full(const std::vector<std::set<std::string>>& rows,
                          const std::vector<std::size_t>& order,
                          const std::set<std::string>& universe) {
  std::set<std::string> seen;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (const auto& k : rows[order[i]]) {
      if (universe.count(k)) seen.insert(k);
    }
    if (seen.size() == universe.size()) return i + 1;
  }
  return 0;
}

}  // namespace

Grammar Grammar::from_json(std::string_view text) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw GrammarError(std::string("grammar json: ") + e.what());
  }
  if (!j.is_object() || j.empty()) throw GrammarError("grammar must be a non-empty object");
  Grammar g;
  for (const auto& [lhs, alts] : j.items()) {
    if (!alts.is_array()) throw GrammarError("alternatives of " + lhs + " must be a list");
    std::vector<Alternative> list;
    for (const auto& a : alts) {
      if (!a.is_string()) throw GrammarError("alternative of " + lhs + " must be a string");
      auto rhs = split_ws(a.get<std::string>());
      if (rhs.empty()) throw GrammarError("empty alternative for " + lhs);
      list.push_back(std::move(rhs));
    }
    g.order_.push_back(lhs);
    g.rules_.emplace(lhs, std::move(list));
  }
  for (const auto& [lhs, alts] : g.rules_) {
    for (const auto& alt : alts) {
      for (const auto& s : alt) {
        if (!g.rules_.count(s)) throw GrammarError("undefined symbol " + s + " in " + lhs);
      }
    }
  }
  return g;
}

const Grammar& Grammar::cogs() {
  static const Grammar g = from_json(assets::kGrammarJson);
  return g;
}

bool Grammar::contains(std::string_view sym) const { return rules_.find(sym) != rules_.end(); }

bool Grammar::is_leaf(std::string_view sym) const { return alternatives(sym).empty(); }

const std::vector<Grammar::Alternative>& Grammar::alternatives(std::string_view sym) const {
  auto it = rules_.find(sym);
  if (it == rules_.end()) throw GrammarError("unknown symbol " + std::string(sym));
  return it->second;
}

std::string strip_brackets(std::string_view sym) {
  if (sym.size() >= 2 && sym.front() == '<' && sym.back() == '>') {
    return std::string(sym.substr(1, sym.size() - 2));
  }
  return std::string(sym);
}

std::string expansion_key(std::string_view lhs, const Grammar::Alternative& rhs) {
  std::string key(lhs);
  key += " ->";
  for (const auto& s : rhs) key += " " + s;
  return key;
}

std::vector<std::string> leaf_categories(const LexEntry& entry) {
  std::vector<std::string> out;
  auto add = [&out](std::initializer_list<const char*> names) {
    for (const char* n : names) {
      std::string s = std::string("<") + n + ">";
      if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
    }
  };
  for (PosCode c : entry.codes()) {
    switch (c) {
      case PosCode::kDet: add({"det"}); break;
      case PosCode::kPp: add({"pp"}); break;
      case PosCode::kWas: add({"was"}); break;
      case PosCode::kBy: add({"by"}); break;
      case PosCode::kTo: add({"to"}); break;
      case PosCode::kThat: add({"that"}); break;
      case PosCode::kCommonNoun: add({"common_noun"}); break;
      case PosCode::kProperNoun: add({"proper_noun"}); break;
      case PosCode::kVTransOmissible:
        add({"v_trans_omissible_p1", "v_trans_omissible_p2"});
        break;
      case PosCode::kVTransOmissiblePp:
        add({"v_trans_omissible_pp_p1", "v_trans_omissible_pp_p2"});
        break;
      case PosCode::kVTransNotOmissible: add({"v_trans_not_omissible"}); break;
      case PosCode::kVTransNotOmissiblePp:
        add({"v_trans_not_omissible_pp_p1", "v_trans_not_omissible_pp_p2"});
        break;
      case PosCode::kVCpTaking: add({"v_cp_taking"}); break;
      case PosCode::kVInfTaking: add({"v_inf_taking"}); break;
      case PosCode::kVUnacc: add({"v_unacc_p1", "v_unacc_p2"}); break;
      case PosCode::kVUnerg: add({"v_unerg"}); break;
      case PosCode::kVInf: add({"v_inf"}); break;
      case PosCode::kVDat: add({"v_dat_p1", "v_dat_p2"}); break;
      case PosCode::kVDatPp:
        add({"v_dat_pp_p1", "v_dat_pp_p2", "v_dat_pp_p3", "v_dat_pp_p4"});
        break;
      case PosCode::kVUnaccPp: add({"v_unacc_pp_p1", "v_unacc_pp_p2"}); break;
      default: break;
    }
  }
  return out;
}

ParseTree parse_sentence(const std::vector<std::string>& tokens,
                         const Lexicon& lexicon, const Grammar& grammar) {
  ChartParser p(grammar, tokens, lexicon);
  if (!p.recognize()) throw OutOfGrammar("no parse for: " + join(tokens));
  return p.tree();
}

bool parses(const std::vector<std::string>& tokens, const Lexicon& lexicon,
            const Grammar& grammar) {
  for (const auto& t : tokens) {
    if (t != "." && !lexicon.contains(t)) return false;
  }
  ChartParser p(grammar, tokens, lexicon);
  return p.recognize();
}

std::set<std::string> expansion_keys(const ParseTree& tree) {
  std::set<std::string> out;
  collect_keys(tree, out);
  return out;
}

std::set<std::string> max_expansion_coverage(const Grammar& grammar) {
  std::set<std::string> keys;
  std::set<std::string> visited{grammar.start()};
  std::vector<std::string> todo{grammar.start()};
  while (!todo.empty()) {
    std::string sym = todo.back();
    todo.pop_back();
    for (const auto& alt : grammar.alternatives(sym)) {
      keys.insert(expansion_key(sym, alt));
      for (const auto& c : alt) {
        if (visited.insert(c).second) todo.push_back(c);
      }
    }
  }
  return keys;
}

CoverageReport coverage(const std::vector<std::string>& sentences,
                        const Lexicon& lexicon, const Grammar& grammar) {
  CoverageReport r;
  r.universe = max_expansion_coverage(grammar);
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    ParseTree t;
    try {
      t = parse_sentence(tokenize(sentences[i]), lexicon, grammar);
    } catch (const Error& e) {
      throw OutOfGrammar("sentence " + std::to_string(i) + ": " + e.what());
    }
    collect_keys(t, r.observed);
  }
  std::size_t hit = 0;
  for (const auto& k : r.universe) {
    if (r.observed.count(k)) {
      ++hit;
    } else {
      r.missing.insert(k);
    }
  }
  r.fraction = r.universe.empty() ? 0.0 : double(hit) / double(r.universe.size());
  return r;
}

double percentile(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) throw PreconditionError("percentile of empty sample");
  double pos = q * double(sorted.size() - 1);
  auto lo = static_cast<std::size_t>(std::floor(pos));
  std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - double(lo)) * (sorted[hi] - sorted[lo]);
}

CoverageCurve coverage_curve(const std::vector<std::set<std::string>>& rows,
                             const std::set<std::string>& universe,
                             std::size_t shuffles, unsigned long long seed) {
  CoverageCurve c;
  std::vector<std::size_t> order(rows.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  c.unshuffled = steps_to_full(rows, order, universe);
  std::mt19937_64 rng(seed);
  std::vector<double> reached;
  for (std::size_t s = 0; s < shuffles; ++s) {
    std::shuffle(order.begin(), order.end(), rng);
    std::size_t n = steps_to_full(rows, order, universe);
    c.shuffled.push_back(n);
    if (n == 0) {
      ++c.never_reached;
    } else {
      reached.push_back(double(n));
    }
  }
  if (!reached.empty()) {
    std::sort(reached.begin(), reached.end());
    c.median = percentile(reached, 0.5);
    c.p025 = percentile(reached, 0.025);
    c.p975 = percentile(reached, 0.975);
  }
  return c;
}

}  // namespace rr
