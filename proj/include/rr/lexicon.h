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


#ifndef RR_LEXICON_H_
#define RR_LEXICON_H_

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "rr/rasp.h"

namespace rr {

enum class PosCode : int {
  kFiller = 0,
  kDet = 1,
  kPp = 2,
  kWas = 3,
  kBy = 4,
  kTo = 5,
  kThat = 6,
  kCommonNoun = 7,
  kProperNoun = 8,
  kVTransOmissible = 9,
  kVTransOmissiblePp = 10,
  kVTransNotOmissible = 11,
  kVTransNotOmissiblePp = 12,
  kVCpTaking = 13,
  kVInfTaking = 14,
  kVUnacc = 15,
  kVUnerg = 16,
  kVInf = 17,
  kVDat = 18,
  kVDatPp = 19,
  kVUnaccPp = 20,
  kVNormalizedInOutput = 21,
};

inline double code(PosCode c) { return static_cast<double>(c); }

// "v_dat_pp", "common_noun", ... Positional variants such as
// "v_dat_pp_p3" resolve to their base code.
std::optional<PosCode> parse_category(std::string_view name);
std::string category_name(PosCode c);

bool is_verb_code(PosCode c);

struct LexEntry {
  std::string word;
  PosCode pos = PosCode::kFiller;
  // Active form, passive form, cp-taking, inf-taking. kFiller when empty.
  std::array<PosCode, 4> vmap{PosCode::kFiller, PosCode::kFiller,
                              PosCode::kFiller, PosCode::kFiller};
  std::optional<std::string> stem;
  std::vector<std::string> categories;  // as listed in the source line

  bool has(PosCode c) const;
  std::vector<PosCode> codes() const;
  bool is_verb() const;
};

struct Embedding {
  rasp::Sequence pos;
  std::array<rasp::Sequence, 4> vmap;
};

class Lexicon {
 public:
  Lexicon() = default;

  // TSV lines: word<TAB>cat1,cat2,...[<TAB>stem]. '#' starts a comment.
  static Lexicon parse(std::string_view text, const std::string& origin);
  static Lexicon load(const std::filesystem::path& path);
  static const Lexicon& builtin();

  void add(LexEntry entry);

  const LexEntry* find(std::string_view word) const;
  const LexEntry& at(std::string_view word) const;
  bool contains(std::string_view word) const { return find(word) != nullptr; }
  std::size_t size() const { return entries_.size(); }

  // Input words. "." maps to the filler code.
  Embedding embed(const std::vector<std::string>& tokens) const;
  // Decoder tail: nouns keep their code, verb stems become
  // kVNormalizedInOutput, LF punctuation and indices are filler.
  Embedding embed_output(const std::vector<std::string>& tokens) const;

  std::string normalize_nv(std::string_view word) const;
  bool is_stem(std::string_view s) const { return stems_.count(std::string(s)) > 0; }

  // Sorted words whose entry carries the code in any slot.
  std::vector<std::string> words_with(PosCode c) const;
  const std::map<std::string, LexEntry, std::less<>>& entries() const {
    return entries_;
  }

  std::string to_tsv() const;

 private:
  std::map<std::string, LexEntry, std::less<>> entries_;
  std::set<std::string> stems_;
};

LexEntry make_entry(const std::string& word,
                    const std::vector<std::string>& categories,
                    std::optional<std::string> stem);

std::string to_lower(std::string_view s);
// Lowercased, whitespace-split.
std::vector<std::string> tokenize(std::string_view sentence);
std::string join(const std::vector<std::string>& tokens,
                 std::string_view sep = " ");

}  // namespace rr

#endif  // RR_LEXICON_H_
