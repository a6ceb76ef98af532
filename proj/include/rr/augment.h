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


// Moves the single theme pp of an "np v_dat_p2 np np" row onto the
// recipient.

#ifndef RR_AUGMENT_H_
#define RR_AUGMENT_H_

#include <optional>
#include <string>
#include <vector>

#include "rr/dataset.h"
#include "rr/grammar.h"
#include "rr/lexicon.h"

namespace rr {

inline constexpr const char* kAugmentCategory = "v_dat_p2_pp_moved_to_recipient";

struct AugmentResult {
  std::optional<DatasetRow> row;
  std::string skip_reason;  // set when row is empty
};

// Keeps the sentence's original casing. The new LF comes from the oracle on
// the reparsed sentence, with proper-noun labels cased as in the sentence.
AugmentResult augment_v_dat_p2(const DatasetRow& row, const Lexicon& lexicon,
                               const Grammar& grammar = Grammar::cogs());

struct AugmentSummary {
  std::vector<DatasetRow> rows;
  std::size_t skipped = 0;
};

// Applies augment_v_dat_p2 to every row, dropping the ones it skips.
AugmentSummary augment_all(const std::vector<DatasetRow>& rows, const Lexicon& lexicon,
                           const Grammar& grammar = Grammar::cogs());

}  // namespace rr

#endif  // RR_AUGMENT_H_
