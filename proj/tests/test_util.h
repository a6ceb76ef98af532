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


// Shared helpers for the test binaries.

#ifndef RR_TESTS_TEST_UTIL_H_
#define RR_TESTS_TEST_UTIL_H_

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"

namespace rr::testing {

inline std::filesystem::path source_dir() {
  const char* env = std::getenv("RR_SOURCE_DIR");
  return env ? std::filesystem::path(env) : std::filesystem::current_path();
}

inline std::vector<std::string> read_sentences(const std::string& rel) {
  std::ifstream in(source_dir() / rel);
  REQUIRE_MESSAGE(in.good(), "missing " << rel);
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

}  // namespace rr::testing

#endif  // RR_TESTS_TEST_UTIL_H_
