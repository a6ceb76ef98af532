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


#include "rr/dataset.h"

#include <fstream>
#include <string>

#include "rr/error.h"
#include "rr/grammar.h"
#include "rr/lexicon.h"
#include "rr/logical_form.h"

namespace rr {

LoadedRows load_tsv(const std::filesystem::path& path, const Grammar* filter_grammar,
                    const Lexicon* lexicon) {
  std::ifstream in(path);
  if (!in) throw DatasetError("cannot open " + path.string());
  if (filter_grammar && !lexicon) throw PreconditionError("grammar filter needs a lexicon");
  LoadedRows out;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::size_t from = 0;
    while (true) {
      std::size_t tab = line.find('\t', from);
      f.push_back(line.substr(from, tab - from));
      if (tab == std::string::npos) break;
      from = tab + 1;
    }
    if (n == 1 && (f[0] == "inputs" || f[0] == "sentence")) continue;
    if (f.size() != 3) {
      throw DatasetError(path.string() + ":" + std::to_string(n) + ": expected 3 fields, got " +
                         std::to_string(f.size()));
    }
    DatasetRow row{f[0], normalize_lf_case(f[1]), f[2], n};
    if (filter_grammar) {
      auto tokens = tokenize(row.sentence);
      if (!parses(tokens, *lexicon, *filter_grammar)) {
        ++out.dropped;
        continue;
      }
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

void write_tsv(const std::filesystem::path& path, const std::vector<DatasetRow>& rows) {
  std::ofstream out(path);
  if (!out) throw DatasetError("cannot write " + path.string());
  for (const auto& r : rows) out << r.sentence << '\t' << r.lf << '\t' << r.category << '\n';
}

}  // namespace rr
