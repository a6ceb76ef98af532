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

#ifndef RR_ERROR_H_
#define RR_ERROR_H_

#include <stdexcept>
#include <string>

namespace rr {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Mismatched sequence lengths, selector dimensions or value kinds.
class ShapeError : public Error {
 public:
  using Error::Error;
};

class OutOfVocabulary : public Error {
 public:
  explicit OutOfVocabulary(const std::string& word)
      : Error("out-of-vocabulary word: \"" + word + "\""), word_(word) {}
  const std::string& word() const { return word_; }

 private:
  std::string word_;
};

class LexiconError : public Error {
 public:
  using Error::Error;
};

// No verb template matched a clause.
class UnsupportedSentence : public Error {
 public:
  using Error::Error;
};

class DecodeError : public Error {
 public:
  using Error::Error;
};

class LfParseError : public Error {
 public:
  using Error::Error;
};

class GrammarError : public Error {
 public:
  using Error::Error;
};

// Sentence not derivable from the grammar.
class OutOfGrammar : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class DatasetError : public Error {
 public:
  using Error::Error;
};

}  // namespace rr

#endif  // RR_ERROR_H_
