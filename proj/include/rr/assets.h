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


#ifndef RR_ASSETS_H_
#define RR_ASSETS_H_

#include <string_view>

namespace rr::assets {

// Generated at build time from data/.
extern const std::string_view kLexiconTsv;
extern const std::string_view kGrammarJson;

}  // namespace rr::assets

#endif  // RR_ASSETS_H_
