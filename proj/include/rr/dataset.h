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


#ifndef RR_DATASET_H_
#define RR_DATASET_H_

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

namespace rr {

class Grammar;
class Lexicon;

struct DatasetRow {
  std::string sentence;  // as written in the file
  std::string lf;        // case-normalized
  std::string category;
  std::size_t line = 0;
};

struct LoadedRows {
  std::vector<DatasetRow> rows;
  std::size_t dropped = 0;  // rows filtered as out of grammar
};

// Three tab-separated fields per line. A leading header line whose first
// field is "inputs" or "sentence" is skipped. With a grammar, rows whose
// sentence does not parse are dropped and counted.
LoadedRows load_tsv(const std::filesystem::path& path,
                    const Grammar* filter_grammar = nullptr,
                    const Lexicon* lexicon = nullptr);

void write_tsv(const std::filesystem::path& path,
               const std::vector<DatasetRow>& rows);

}  // namespace rr

#endif  // RR_DATASET_H_
