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


#include "rr/rasp.h"

#include <algorithm>
#include <string>
#include <utility>

#include "rr/error.h"

namespace rr::rasp {

namespace {

bool is_num(const Value& v) { return v.index() == 0; }

void check_same(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw ShapeError(std::string(what) + ": length " + std::to_string(a) +
                     " vs " + std::to_string(b));
  }
}

std::size_t common_size(const Operand& a, const Operand& b, const char* what) {
  auto sa = a.size();
  auto sb = b.size();
  if (sa && sb) {
    check_same(*sa, *sb, what);
    return *sa;
  }
  if (sa) return *sa;
  if (sb) return *sb;
  throw ShapeError(std::string(what) + ": two scalars have no length");
}

double as_num(const Value& v) {
  if (!is_num(v)) throw ShapeError("expected a numeric value");
  return std::get<double>(v);
}

}  // namespace

Sequence Sequence::numeric(std::vector<double> values) {
  Sequence s;
  s.data_ = std::move(values);
  return s;
}

Sequence Sequence::symbolic(std::vector<std::string> values) {
  Sequence s;
  s.data_ = std::move(values);
  return s;
}

Sequence Sequence::indices(std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<double>(i);
  return numeric(std::move(v));
}

Sequence Sequence::fill(std::size_t n, const Value& v) {
  if (is_num(v)) return numeric(std::vector<double>(n, std::get<double>(v)));
  return symbolic(std::vector<std::string>(n, std::get<std::string>(v)));
}

std::size_t Sequence::size() const {
  return std::visit([](const auto& v) { return v.size(); }, data_);
}

const std::vector<double>& Sequence::nums() const {
  if (!is_numeric()) throw ShapeError("symbolic sequence used as numeric");
  return std::get<0>(data_);
}

const std::vector<std::string>& Sequence::syms() const {
  if (is_numeric()) throw ShapeError("numeric sequence used as symbolic");
  return std::get<1>(data_);
}

Value Sequence::at(std::size_t i) const {
  if (is_numeric()) return std::get<0>(data_).at(i);
  return std::get<1>(data_).at(i);
}

Sequence Sequence::slice(std::size_t begin, std::size_t end) const {
  if (begin > end || end > size()) throw ShapeError("slice out of range");
  if (is_numeric()) {
    const auto& v = std::get<0>(data_);
    return numeric({v.begin() + begin, v.begin() + end});
  }
  const auto& v = std::get<1>(data_);
  return symbolic({v.begin() + begin, v.begin() + end});
}

std::optional<std::size_t> Operand::size() const {
  if (is_scalar()) return std::nullopt;
  return std::get<Sequence>(v_).size();
}

bool Operand::is_numeric() const {
  if (is_scalar()) return is_num(std::get<Value>(v_));
  return std::get<Sequence>(v_).is_numeric();
}

Sequence Operand::materialize(std::size_t n) const {
  if (is_scalar()) return Sequence::fill(n, std::get<Value>(v_));
  const auto& s = std::get<Sequence>(v_);
  check_same(s.size(), n, "broadcast");
  return s;
}

Selector Selector::transposed() const {
  Selector t(n_);
  for (std::size_t q = 0; q < n_; ++q) {
    for (std::size_t k = 0; k < n_; ++k) t.set(k, q, at(q, k));
  }
  return t;
}

bool compare(const Value& key, const Value& query, Cmp pred) {
  if (key.index() != query.index()) {
    throw ShapeError("comparison between numeric and symbolic values");
  }
  auto apply = [pred](const auto& a, const auto& b) {
    switch (pred) {
      case Cmp::kEq: return a == b;
      case Cmp::kLt: return a < b;
      case Cmp::kLe: return a <= b;
      case Cmp::kGt: return a > b;
      case Cmp::kGe: return a >= b;
    }
    return false;
  };
  if (is_num(key)) return apply(std::get<double>(key), std::get<double>(query));
  return apply(std::get<std::string>(key), std::get<std::string>(query));
}

Selector select(const Operand& keys, const Operand& queries, Cmp pred) {
  const std::size_t n = common_size(keys, queries, "select");
  if (keys.is_numeric() != queries.is_numeric()) {
    throw ShapeError("select between numeric and symbolic sequences");
  }
  Sequence k = keys.materialize(n);
  Sequence q = queries.materialize(n);
  Selector out(n);
  for (std::size_t qi = 0; qi < n; ++qi) {
    Value qv = q.at(qi);
    for (std::size_t ki = 0; ki < n; ++ki) {
      out.set(qi, ki, compare(k.at(ki), qv, pred));
    }
  }
  return out;
}

Selector combine(const Selector& a, const Selector& b, Connective c) {
  const std::size_t n = a.size();
  if (c != Connective::kNot) check_same(n, b.size(), "combine");
  Selector out(n);
  for (std::size_t q = 0; q < n; ++q) {
    for (std::size_t k = 0; k < n; ++k) {
      bool v = false;
      switch (c) {
        case Connective::kAnd: v = a.at(q, k) && b.at(q, k); break;
        case Connective::kOr: v = a.at(q, k) || b.at(q, k); break;
        case Connective::kNot: v = !a.at(q, k); break;
      }
      out.set(q, k, v);
    }
  }
  return out;
}

Selector operator&(const Selector& a, const Selector& b) {
  return combine(a, b, Connective::kAnd);
}
Selector operator|(const Selector& a, const Selector& b) {
  return combine(a, b, Connective::kOr);
}
Selector operator!(const Selector& a) { return combine(a, a, Connective::kNot); }

Sequence aggregate(const Selector& sel, const Operand& values) {
  const std::size_t n = sel.size();
  Sequence v = values.materialize(n);
  if (v.is_numeric()) {
    std::vector<double> out(n, 0.0);
    const auto& x = v.nums();
    for (std::size_t q = 0; q < n; ++q) {
      double sum = 0;
      std::size_t count = 0;
      for (std::size_t k = 0; k < n; ++k) {
        if (sel.at(q, k)) {
          sum += x[k];
          ++count;
        }
      }
      if (count) out[q] = sum / static_cast<double>(count);
    }
    return Sequence::numeric(std::move(out));
  }
  std::vector<std::string> out(n);
  for (std::size_t q = 0; q < n; ++q) {
    out[q] = std::get<std::string>(aggregate(row_of(sel, q), v));
  }
  return Sequence::symbolic(std::move(out));
}

Sequence selector_width(const Selector& sel) {
  const std::size_t n = sel.size();
  std::vector<double> out(n, 0.0);
  for (std::size_t q = 0; q < n; ++q) {
    for (std::size_t k = 0; k < n; ++k) out[q] += sel.at(q, k) ? 1 : 0;
  }
  return Sequence::numeric(std::move(out));
}

Sequence elementwise(Op op, const Operand& a, const Operand& b) {
  const std::size_t n = common_size(a, b, "elementwise");
  Sequence x = a.materialize(n);
  Sequence y = b.materialize(n);
  if (x.is_numeric() != y.is_numeric()) {
    throw ShapeError("elementwise op between numeric and symbolic sequences");
  }
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    Value u = x.at(i);
    Value v = y.at(i);
    switch (op) {
      case Op::kEq: out[i] = compare(u, v, Cmp::kEq); continue;
      case Op::kNe: out[i] = !compare(u, v, Cmp::kEq); continue;
      case Op::kLt: out[i] = compare(u, v, Cmp::kLt); continue;
      case Op::kLe: out[i] = compare(u, v, Cmp::kLe); continue;
      case Op::kGt: out[i] = compare(u, v, Cmp::kGt); continue;
      case Op::kGe: out[i] = compare(u, v, Cmp::kGe); continue;
      default: break;
    }
    double p = as_num(u);
    double q = as_num(v);
    switch (op) {
      case Op::kAdd: out[i] = p + q; break;
      case Op::kSub: out[i] = p - q; break;
      case Op::kMul: out[i] = p * q; break;
      case Op::kMin: out[i] = std::min(p, q); break;
      case Op::kMax: out[i] = std::max(p, q); break;
      case Op::kAnd: out[i] = (p != 0 && q != 0) ? 1 : 0; break;
      case Op::kOr: out[i] = (p != 0 || q != 0) ? 1 : 0; break;
      default: break;
    }
  }
  return Sequence::numeric(std::move(out));
}

Sequence indicator(const Sequence& a, Cmp pred, const Operand& b) {
  switch (pred) {
    case Cmp::kEq: return elementwise(Op::kEq, a, b);
    case Cmp::kLt: return elementwise(Op::kLt, a, b);
    case Cmp::kLe: return elementwise(Op::kLe, a, b);
    case Cmp::kGt: return elementwise(Op::kGt, a, b);
    case Cmp::kGe: return elementwise(Op::kGe, a, b);
  }
  return {};
}

Sequence where(const Sequence& cond, const Operand& a, const Operand& b) {
  const std::size_t n = cond.size();
  Sequence x = a.materialize(n);
  Sequence y = b.materialize(n);
  if (x.is_numeric() != y.is_numeric()) {
    throw ShapeError("where: branches of different kinds");
  }
  const auto& c = cond.nums();
  if (x.is_numeric()) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = c[i] != 0 ? x.num(i) : y.num(i);
    return Sequence::numeric(std::move(out));
  }
  std::vector<std::string> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = c[i] != 0 ? x.syms()[i] : y.syms()[i];
  }
  return Sequence::symbolic(std::move(out));
}

Sequence map(const Sequence& a, const std::function<Value(const Value&)>& f) {
  const std::size_t n = a.size();
  if (n == 0) return a;
  std::vector<Value> vals(n);
  for (std::size_t i = 0; i < n; ++i) vals[i] = f(a.at(i));
  bool num = is_num(vals[0]);
  if (num) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = as_num(vals[i]);
    return Sequence::numeric(std::move(out));
  }
  std::vector<std::string> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (is_num(vals[i])) throw ShapeError("map produced mixed kinds");
    out[i] = std::get<std::string>(vals[i]);
  }
  return Sequence::symbolic(std::move(out));
}

Sequence operator+(const Operand& a, const Operand& b) {
  return elementwise(Op::kAdd, a, b);
}
Sequence operator-(const Operand& a, const Operand& b) {
  return elementwise(Op::kSub, a, b);
}
Sequence operator*(const Operand& a, const Operand& b) {
  return elementwise(Op::kMul, a, b);
}

Row select_row(const Sequence& keys, const Value& query, Cmp pred) {
  Row out(keys.size());
  for (std::size_t k = 0; k < keys.size(); ++k) {
    out.set(k, compare(keys.at(k), query, pred));
  }
  return out;
}

Row row_of(const Selector& sel, std::size_t q) {
  Row out(sel.size());
  for (std::size_t k = 0; k < sel.size(); ++k) out.set(k, sel.at(q, k));
  return out;
}

Row operator&(const Row& a, const Row& b) {
  check_same(a.size(), b.size(), "row and");
  Row out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out.set(k, a.at(k) && b.at(k));
  return out;
}

Row operator|(const Row& a, const Row& b) {
  check_same(a.size(), b.size(), "row or");
  Row out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out.set(k, a.at(k) || b.at(k));
  return out;
}

Row operator!(const Row& a) {
  Row out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out.set(k, !a.at(k));
  return out;
}

double width(const Row& row) {
  double w = 0;
  for (std::size_t k = 0; k < row.size(); ++k) w += row.at(k) ? 1 : 0;
  return w;
}

Value aggregate(const Row& row, const Operand& values) {
  Sequence v = values.materialize(row.size());
  if (v.is_numeric()) {
    double sum = 0;
    std::size_t count = 0;
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (row.at(k)) {
        sum += v.num(k);
        ++count;
      }
    }
    return count ? sum / static_cast<double>(count) : 0.0;
  }
  const std::string* seen = nullptr;
  for (std::size_t k = 0; k < row.size(); ++k) {
    if (!row.at(k)) continue;
    const std::string& s = v.syms()[k];
    if (seen && *seen != s) {
      throw ShapeError("mean over distinct symbols \"" + *seen + "\", \"" + s +
                       "\"");
    }
    seen = &s;
  }
  return seen ? *seen : std::string();
}

double aggregate_num(const Row& row, const Operand& values) {
  return as_num(aggregate(row, values));
}

}  // namespace rr::rasp
