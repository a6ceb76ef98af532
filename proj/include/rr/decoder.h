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


// Autoregressive LF decoder. Each step re-reads input ++ "|" ++ output and
// picks the next token from counters evaluated at the last position.
//
// Output layout: noun introductions in position order, then body items in
// the position order of their head word. A preposition heads its nmod, a
// verb heads its predicate followed by its relations.

#ifndef RR_DECODER_H_
#define RR_DECODER_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "rr/encoder.h"
#include "rr/lexicon.h"
#include "rr/logical_form.h"
#include "rr/rasp.h"

namespace rr {

inline constexpr std::string_view kEndMarker = "<end>";
inline constexpr std::string_view kPipe = "|";

struct DecodeOptions {
  bool ablate_no_pp_rule = false;
  std::size_t max_steps = 400;
  std::size_t max_len = rasp::kDefaultMaxLength;
};

struct DecoderState {
  std::vector<std::string> combined;
  rasp::Sequence input_mask;
  rasp::Sequence output_mask;

  double nv_in_input_count = 0;
  double nv_in_output_count = 0;
  double agent_theme_recipient_xcomp_output_count = 0;
  double nmods_and_pps_in_output_count = 0;
  double pps_in_input_count = 0;

  double pipes = 0;
  double semicolons = 0;   // completed noun introductions
  double ands = 0;         // completed body items
  double output_tokens_excluding_asterisks = 0;
  bool last_is_star = false;

  // Recomputes every field from the token sequence.
  static DecoderState build(const std::vector<std::string>& input,
                            const std::vector<std::string>& output,
                            const Lexicon& lexicon);
};

std::string next_token(const DecoderState& state, const EncoderState& enc,
                       const DecodeOptions& opts = {});
std::string intro_phase_token(const DecoderState& state,
                              const EncoderState& enc);
// Verb predicates and relations.
std::string relation_phase_token(const DecoderState& state,
                                 const EncoderState& enc,
                                 const DecodeOptions& opts);
std::string nmod_phase_token(const DecoderState& state,
                             const EncoderState& enc);

std::vector<std::string> decode_tokens(const std::vector<std::string>& tokens,
                                       const Lexicon& lexicon,
                                       const DecodeOptions& opts = {});
std::string decode_text(const std::vector<std::string>& tokens,
                        const Lexicon& lexicon,
                        const DecodeOptions& opts = {});
LogicalForm decode(const std::vector<std::string>& tokens,
                   const Lexicon& lexicon, const DecodeOptions& opts = {});
LogicalForm decode_ablated(const std::vector<std::string>& tokens,
                           const Lexicon& lexicon,
                           DecodeOptions opts = {});

}  // namespace rr

#endif  // RR_DECODER_H_
