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


#include "rr/lexicon.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <utility>

#include "rr/assets.h"
#include "rr/error.h"

namespace rr {

namespace {

struct CategoryName {
  const char* name;
  PosCode code;
};

constexpr CategoryName kCategories[] = {
    {"det", PosCode::kDet},
    {"pp", PosCode::kPp},
    {"was", PosCode::kWas},
    {"by", PosCode::kBy},
    {"to", PosCode::kTo},
    {"that", PosCode::kThat},
    {"common_noun", PosCode::kCommonNoun},
    {"proper_noun", PosCode::kProperNoun},
    {"v_trans_omissible", PosCode::kVTransOmissible},
    {"v_trans_omissible_pp", PosCode::kVTransOmissiblePp},
    {"v_trans_not_omissible", PosCode::kVTransNotOmissible},
    {"v_trans_not_omissible_pp", PosCode::kVTransNotOmissiblePp},
    {"v_cp_taking", PosCode::kVCpTaking},
    {"v_inf_taking", PosCode::kVInfTaking},
    {"v_unacc", PosCode::kVUnacc},
    {"v_unerg", PosCode::kVUnerg},
    {"v_inf", PosCode::kVInf},
    {"v_dat", PosCode::kVDat},
    {"v_dat_pp", PosCode::kVDatPp},
    {"v_unacc_pp", PosCode::kVUnaccPp},
    {"v_normalized_in_output", PosCode::kVNormalizedInOutput},
};

int slot_for(PosCode c) {
  switch (c) {
    case PosCode::kVTransOmissible:
    case PosCode::kVTransNotOmissible:
    case PosCode::kVUnacc:
    case PosCode::kVUnerg:
    case PosCode::kVInf:
    case PosCode::kVDat:
    case PosCode::kVNormalizedInOutput:
      return 0;
    case PosCode::kVTransOmissiblePp:
    case PosCode::kVTransNotOmissiblePp:
    case PosCode::kVDatPp:
    case PosCode::kVUnaccPp:
      return 1;
    case PosCode::kVCpTaking:
      return 2;
    case PosCode::kVInfTaking:
      return 3;
    default:
      return -1;
  }
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t end = s.find(sep, start);
    out.emplace_back(s.substr(start, end == std::string_view::npos
                                         ? std::string_view::npos
                                         : end - start));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}


}  // namespace

std::optional<PosCode> parse_category(std::string_view name) {
  for (const auto& c : kCategories) {
    if (name == c.name) return c.code;
  }
  // Positional variants: v_dat_pp_p3 -> v_dat_pp.
  auto p = name.rfind("_p");
  if (p != std::string_view::npos && p + 2 < name.size() &&
      std::all_of(name.begin() + p + 2, name.end(),
                  [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
    return parse_category(name.substr(0, p));
  }
  return std::nullopt;
}

std::string category_name(PosCode c) {
  for (const auto& e : kCategories) {
    if (e.code == c) return e.name;
  }
  return "filler";
}

bool is_verb_code(PosCode c) { return slot_for(c) >= 0; }

bool LexEntry::has(PosCode c) const {
  if (pos == c) return true;
  return std::find(vmap.begin(), vmap.end(), c) != vmap.end() &&
         c != PosCode::kFiller;
}

std::vector<PosCode> LexEntry::codes() const {
  std::vector<PosCode> out{pos};
  for (PosCode c : vmap) {
    if (c != PosCode::kFiller && c != pos) out.push_back(c);
  }
  return out;
}

bool LexEntry::is_verb() const { return is_verb_code(pos); }

LexEntry make_entry(const std::string& word,
                    const std::vector<std::string>& categories,
                    std::optional<std::string> stem) {
  if (word.empty()) throw LexiconError("empty word");
  if (categories.empty()) throw LexiconError("no categories for \"" + word + "\"");
  LexEntry e;
  e.word = to_lower(word);
  e.categories = categories;
  bool first = true;
  for (const auto& name : categories) {
    auto c = parse_category(name);
    if (!c) throw LexiconError("invalid category \"" + name + "\" for \"" + word + "\"");
    if (*c == PosCode::kVNormalizedInOutput) {
      throw LexiconError("category reserved for decoder output: " + name);
    }
    if (first) {
      e.pos = *c;
      first = false;
    }
    int slot = slot_for(*c);
    if (slot < 0) {
      if (*c != e.pos) {
        throw LexiconError("invalid code combination for \"" + word + "\"");
      }
      continue;
    }
    if (!is_verb_code(e.pos)) {
      throw LexiconError("invalid code combination for \"" + word + "\"");
    }
    PosCode& s = e.vmap[static_cast<std::size_t>(slot)];
    if (s != PosCode::kFiller && s != *c) {
      throw LexiconError("two codes compete for one verb slot in \"" + word + "\"");
    }
    s = *c;
  }
  if (stem && !stem->empty()) {
    if (!e.is_verb()) throw LexiconError("stem given for non-verb \"" + word + "\"");
    e.stem = to_lower(*stem);
  } else if (e.is_verb() && e.pos != PosCode::kVInf) {
    throw LexiconError("missing stem for verb \"" + word + "\"");
  }
  return e;
}

Lexicon Lexicon::parse(std::string_view text, const std::string& origin) {
  Lexicon lex;
  std::size_t line_no = 0;
  for (const auto& raw : split(text, '\n')) {
    ++line_no;
    std::string line = raw;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty() || trim(line)[0] == '#') continue;
    auto fields = split(line, '\t');
    auto where = origin + ":" + std::to_string(line_no) + ": ";
    if (fields.size() < 2 || fields.size() > 3) {
      throw LexiconError(where + "expected 2 or 3 tab-separated fields");
    }
    std::vector<std::string> cats;
    for (const auto& c : split(fields[1], ',')) cats.push_back(trim(c));
    std::optional<std::string> stem;
    if (fields.size() == 3 && !trim(fields[2]).empty()) stem = trim(fields[2]);
    try {
      LexEntry e = make_entry(trim(fields[0]), cats, stem);
      if (lex.contains(e.word)) throw LexiconError("duplicate word \"" + e.word + "\"");
      lex.add(std::move(e));
    } catch (const LexiconError& err) {
      throw LexiconError(where + err.what());
    }
  }
  if (lex.size() == 0) throw LexiconError(origin + ": empty lexicon");
  return lex;
}

Lexicon Lexicon::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LexiconError("cannot open lexicon " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path.string());
}

const Lexicon& Lexicon::builtin() {
  static const Lexicon lex = parse(assets::kLexiconTsv, "<builtin lexicon>");
  return lex;
}

void Lexicon::add(LexEntry entry) {
  if (entry.stem) stems_.insert(*entry.stem);
  if (entry.has(PosCode::kVInf)) stems_.insert(entry.word);
  std::string key = entry.word;
  entries_[key] = std::move(entry);
}

const LexEntry* Lexicon::find(std::string_view word) const {
  auto it = entries_.find(word);
  return it == entries_.end() ? nullptr : &it->second;
}

const LexEntry& Lexicon::at(std::string_view word) const {
  const LexEntry* e = find(word);
  if (!e) throw OutOfVocabulary(std::string(word));
  return *e;
}

Embedding Lexicon::embed(const std::vector<std::string>& tokens) const {
  const std::size_t n = tokens.size();
  std::vector<double> pos(n, 0);
  std::array<std::vector<double>, 4> vm;
  for (auto& v : vm) v.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (tokens[i] == ".") continue;
    const LexEntry& e = at(tokens[i]);
    pos[i] = code(e.pos);
    for (std::size_t s = 0; s < 4; ++s) vm[s][i] = code(e.vmap[s]);
  }
  Embedding out;
  out.pos = rasp::Sequence::numeric(std::move(pos));
  for (std::size_t s = 0; s < 4; ++s) out.vmap[s] = rasp::Sequence::numeric(std::move(vm[s]));
  return out;
}

Embedding Lexicon::embed_output(const std::vector<std::string>& tokens) const {
  const std::size_t n = tokens.size();
  std::vector<double> pos(n, 0);
  std::vector<double> v1(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const LexEntry* e = find(tokens[i]);
    if (e && (e->pos == PosCode::kCommonNoun || e->pos == PosCode::kProperNoun)) {
      pos[i] = code(e->pos);
    } else if (is_stem(tokens[i])) {
      pos[i] = v1[i] = code(PosCode::kVNormalizedInOutput);
    }
  }
  Embedding out;
  out.pos = rasp::Sequence::numeric(std::move(pos));
  out.vmap[0] = rasp::Sequence::numeric(std::move(v1));
  for (std::size_t s = 1; s < 4; ++s) out.vmap[s] = rasp::Sequence::fill(n, 0.0);
  return out;
}

std::string Lexicon::normalize_nv(std::string_view word) const {
  const LexEntry* e = find(word);
  if (e && e->stem) return *e->stem;
  return std::string(word);
}

std::vector<std::string> Lexicon::words_with(PosCode c) const {
  std::vector<std::string> out;
  for (const auto& [w, e] : entries_) {
    if (e.has(c)) out.push_back(w);
  }
  return out;
}

std::string Lexicon::to_tsv() const {
  std::ostringstream out;
  for (const auto& [w, e] : entries_) {
    out << w << '\t';
    for (std::size_t i = 0; i < e.categories.size(); ++i) {
      out << (i ? "," : "") << e.categories[i];
    }
    if (e.stem) out << '\t' << *e.stem;
    out << '\n';
  }
  return out.str();
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& ch : out) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return out;
}

std::vector<std::string> tokenize(std::string_view sentence) {
  std::vector<std::string> out;
  std::istringstream in{std::string(sentence)};
  std::string tok;
  while (in >> tok) out.push_back(to_lower(tok));
  return out;
}

std::string join(const std::vector<std::string>& tokens, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += sep;
    out += tokens[i];
  }
  return out;
}

}  // namespace rr
