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


// ReCOGS_pos logical forms: parsing, printing, semantic graphs and
// semantic exact match.

#ifndef RR_LOGICAL_FORM_H_
#define RR_LOGICAL_FORM_H_

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace rr {

// "boy ( 1 )" or "* girl ( 4 )".
struct Term {
  std::string label;
  bool star = false;
  int index = 0;
  bool operator==(const Term&) const = default;
};

// "agent ( 2 , 1 )"; nmods use "nmod.beside".
struct Atom {
  std::string relation;
  int left = 0;
  int right = 0;
  bool operator==(const Atom&) const = default;
  auto operator<=>(const Atom&) const = default;
};

struct LogicalForm {
  std::vector<Term> intros;  // every unary predicate, prefix and body
  std::vector<Atom> atoms;

  // Print layout: intros[0, prefix_count) are ';'-separated, then body
  // conjuncts in order.
  struct BodyRef {
    bool is_term;
    std::size_t index;
  };
  std::size_t prefix_count = 0;
  std::vector<BodyRef> body;
};

LogicalForm parse_lf(std::string_view text);
std::string to_string(const LogicalForm& lf);

bool is_known_relation(std::string_view relation);

bool semantic_exact_match(const LogicalForm& a, const LogicalForm& b);
// Parses both; unparseable text never matches.
bool semantic_exact_match(std::string_view a, std::string_view b);
bool string_exact_match(std::string_view a, std::string_view b);

std::string normalize_whitespace(std::string_view text);
// Lowercases every token except the AND connective.
std::string normalize_lf_case(std::string_view text);

struct Edge {
  int source = 0;
  int target = 0;
  std::string label;
  bool operator==(const Edge&) const = default;
};

struct SemanticGraph {
  std::map<int, std::string> nodes;
  std::vector<Edge> edges;
};

// Agent edges run from the agent to the verb; all others follow the atom's
// argument order.
SemanticGraph to_graph(const LogicalForm& lf);

}  // namespace rr

#endif  // RR_LOGICAL_FORM_H_
