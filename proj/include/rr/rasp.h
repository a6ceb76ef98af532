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


// Sequence operations over token positions: select, aggregate,
// selector_width and element-wise arithmetic.
//
// A Selector is an N x N boolean matrix indexed [query][key]; select() sets
// entry (q, k) iff pred(keys[k], queries[q]) holds. Row and the *_row
// functions evaluate a single query position, which is all a causal decoder
// needs at its last position.

#ifndef RR_RASP_H_
#define RR_RASP_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace rr::rasp {

inline constexpr std::size_t kDefaultMaxLength = 512;

enum class Cmp { kEq, kLt, kLe, kGt, kGe };

using Value = std::variant<double, std::string>;

class Sequence {
 public:
  Sequence() : data_(std::vector<double>{}) {}

  static Sequence numeric(std::vector<double> values);
  static Sequence symbolic(std::vector<std::string> values);
  static Sequence indices(std::size_t n);
  static Sequence fill(std::size_t n, const Value& v);

  std::size_t size() const;
  bool is_numeric() const { return data_.index() == 0; }

  // Throw ShapeError on the wrong kind.
  const std::vector<double>& nums() const;
  const std::vector<std::string>& syms() const;

  Value at(std::size_t i) const;
  double num(std::size_t i) const { return nums().at(i); }

  // Sub-range [begin, end).
  Sequence slice(std::size_t begin, std::size_t end) const;

  bool operator==(const Sequence&) const = default;

 private:
  std::variant<std::vector<double>, std::vector<std::string>> data_;
};

// A sequence or a scalar that broadcasts to the other argument's length.
class Operand {
 public:
  Operand(const Sequence& s) : v_(s) {}  // NOLINT
  Operand(double x) : v_(Value(x)) {}    // NOLINT
  Operand(int x) : v_(Value(static_cast<double>(x))) {}  // NOLINT
  Operand(const char* s) : v_(Value(std::string(s))) {}  // NOLINT
  Operand(std::string s) : v_(Value(std::move(s))) {}    // NOLINT

  bool is_scalar() const { return v_.index() == 1; }
  std::optional<std::size_t> size() const;
  bool is_numeric() const;
  Sequence materialize(std::size_t n) const;

 private:
  std::variant<Sequence, Value> v_;
};

class Selector {
 public:
  explicit Selector(std::size_t n, bool fill = false)
      : n_(n), bits_(n * n, fill ? 1 : 0) {}

  std::size_t size() const { return n_; }
  bool at(std::size_t q, std::size_t k) const { return bits_[q * n_ + k]; }
  void set(std::size_t q, std::size_t k, bool v) { bits_[q * n_ + k] = v; }
  Selector transposed() const;

  bool operator==(const Selector&) const = default;

 private:
  std::size_t n_;
  std::vector<std::uint8_t> bits_;
};

enum class Connective { kAnd, kOr, kNot };

bool compare(const Value& key, const Value& query, Cmp pred);

Selector select(const Operand& keys, const Operand& queries, Cmp pred);

// kNot negates a and ignores b.
Selector combine(const Selector& a, const Selector& b, Connective c);
Selector operator&(const Selector& a, const Selector& b);
Selector operator|(const Selector& a, const Selector& b);
Selector operator!(const Selector& a);

// Mean over selected keys; empty rows give 0 (numeric) or "" (symbolic).
Sequence aggregate(const Selector& sel, const Operand& values);
Sequence selector_width(const Selector& sel);

enum class Op { kAdd, kSub, kMul, kMin, kMax, kEq, kNe, kLt, kLe, kGt, kGe, kAnd, kOr };

Sequence elementwise(Op op, const Operand& a, const Operand& b);
Sequence indicator(const Sequence& a, Cmp pred, const Operand& b);
// cond[i] != 0 ? a[i] : b[i]
Sequence where(const Sequence& cond, const Operand& a, const Operand& b);
Sequence map(const Sequence& a, const std::function<Value(const Value&)>& f);

Sequence operator+(const Operand& a, const Operand& b);
Sequence operator-(const Operand& a, const Operand& b);
Sequence operator*(const Operand& a, const Operand& b);

// One query row of a selector.
class Row {
 public:
  explicit Row(std::size_t n, bool fill = false) : bits_(n, fill ? 1 : 0) {}
  std::size_t size() const { return bits_.size(); }
  bool at(std::size_t k) const { return bits_[k]; }
  void set(std::size_t k, bool v) { bits_[k] = v; }
  bool operator==(const Row&) const = default;

 private:
  std::vector<std::uint8_t> bits_;
};

Row select_row(const Sequence& keys, const Value& query, Cmp pred);
Row row_of(const Selector& sel, std::size_t q);
Row operator&(const Row& a, const Row& b);
Row operator|(const Row& a, const Row& b);
Row operator!(const Row& a);
double width(const Row& row);
Value aggregate(const Row& row, const Operand& values);
double aggregate_num(const Row& row, const Operand& values);

}  // namespace rr::rasp

#endif  // RR_RASP_H_
