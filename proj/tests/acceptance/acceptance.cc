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


// Acceptance checks. Each criterion prints one PASS/FAIL line. Criteria that
// need the ReCOGS_pos files print SKIP and exit 77 when RR_DATA_DIR is unset.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rr/augment.h"
#include "rr/dataset.h"
#include "rr/decoder.h"
#include "rr/encoder.h"
#include "rr/error.h"
#include "rr/fuzzer.h"
#include "rr/grammar.h"
#include "rr/lexicon.h"
#include "rr/logical_form.h"
#include "rr/oracle.h"
#include "rr/runner.h"
#include "rr/score.h"

namespace fs = std::filesystem;

namespace {

// Tolerances and targets.
constexpr double kTestTimeLimitSeconds = 60.0;
constexpr std::size_t kFallbackSentences = 1000;
constexpr double kObjPpTarget = 92.20;
constexpr double kObjPpTolerancePt = 0.5;
constexpr std::size_t kObjPpRows = 1000;
constexpr int kMaxRecursionDepth = 12;
constexpr std::size_t kRecursionSamplesPerDepth = 20;
constexpr std::size_t kUniverseSize = 52;
constexpr std::size_t kCurveShuffles = 1000;
constexpr std::uint64_t kCurveSeed = 1;
constexpr std::size_t kUnshuffledTarget = 55;
constexpr double kMedianLow = 72;
constexpr double kMedianHigh = 82;
constexpr double kIntervalLow = 39;
constexpr double kIntervalHigh = 161;
constexpr double kIntervalTolerance = 8;
constexpr std::size_t kAblationMinCases = 300;
constexpr std::size_t kOracleSentences = 2000;
constexpr std::size_t kFrameCount = 19;
constexpr double kCpTolerance = 1e-4;
constexpr std::size_t kAugmentRows = 328;

const char* const kLiamSentence = "Liam gave the monkey a chalk in the container .";
const char* const kLiamLf =
    "Liam ( 0 ) ; * monkey ( 3 ) ; chalk ( 5 ) ; * container ( 8 ) ; give ( 1 ) AND "
    "agent ( 1 , 0 ) AND recipient ( 1 , 3 ) AND theme ( 1 , 5 ) AND nmod . in ( 5 , 8 )";
const char* const kLiamAugSentence = "Liam gave the monkey in the container a chalk .";
const char* const kLiamAugLf =
    "Liam ( 0 ) ; * monkey ( 3 ) ; * container ( 6 ) ; chalk ( 8 ) ; give ( 1 ) AND "
    "agent ( 1 , 0 ) AND recipient ( 1 , 3 ) AND theme ( 1 , 8 ) AND nmod . in ( 3 , 6 )";

enum class Status { kPass, kFail, kSkip };

struct Outcome {
  Status status;
  std::string detail;
};

Outcome pass_if(bool ok, std::string detail) {
  return {ok ? Status::kPass : Status::kFail, std::move(detail)};
}

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[1024];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

const rr::Lexicon& lex() { return rr::Lexicon::builtin(); }
const rr::Grammar& grammar() { return rr::Grammar::cogs(); }

std::optional<fs::path> data_file(const std::string& name) {
  const char* dir = std::getenv("RR_DATA_DIR");
  if (!dir || !*dir) return std::nullopt;
  return fs::path(dir) / name;
}

fs::path source_path(const std::string& rel) {
  const char* dir = std::getenv("RR_SOURCE_DIR");
  return (dir ? fs::path(dir) : fs::current_path()) / rel;
}

std::vector<std::string> read_lines(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw rr::DatasetError("cannot open " + p.string());
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

// Decodes each sentence and compares against the oracle LF of its tree.
struct OracleTally {
  std::size_t n = 0, sem = 0, em = 0;
  std::string first_failure;
  void add(const rr::FuzzSample& s, const rr::DecodeOptions& opts = {}) {
    ++n;
    std::string want = rr::lf_oracle_text(s.tree, lex());
    std::string got;
    try {
      got = rr::decode_text(s.tokens, lex(), opts);
    } catch (const rr::Error& e) {
      got = std::string("error: ") + e.what();
    }
    bool s_ok = got.rfind("error: ", 0) != 0 && rr::semantic_exact_match(want, got);
    bool e_ok = rr::string_exact_match(want, got);
    sem += s_ok;
    em += e_ok;
    if ((!s_ok || !e_ok) && first_failure.empty()) first_failure = s.sentence + " => " + got;
  }
  bool all_sem() const { return n > 0 && sem == n; }
  bool all_em() const { return n > 0 && em == n; }
  std::string summary() const {
    std::string s = fmt("n=%zu sem=%zu em=%zu", n, sem, em);
    if (!first_failure.empty()) s += " first_failure=[" + first_failure + "]";
    return s;
  }
};

std::size_t count_label(const rr::ParseTree& t, const std::string& label) {
  std::size_t n = t.label == label;
  for (const auto& c : t.children) n += count_label(c, label);
  return n;
}

// Pp count of the subject when every pp of the sentence sits inside it, else 0.
std::size_t subject_pp_depth(const rr::ParseTree& t) {
  std::function<const rr::ParseTree*(const rr::ParseTree&)> leftmost_np =
      [&](const rr::ParseTree& n) -> const rr::ParseTree* {
    if (n.label == "<np>") return &n;
    for (const auto& c : n.children) {
      if (const auto* np = leftmost_np(c)) return np;
    }
    return nullptr;
  };
  const auto* np = leftmost_np(t);
  std::size_t inside = np ? count_label(*np, "<pp>") : 0;
  return inside == count_label(t, "<pp>") ? inside : 0;
}

std::size_t count_token(const std::vector<std::string>& tokens, const std::string& w) {
  return std::count(tokens.begin(), tokens.end(), w);
}

// The flat frames are every template except the cp one, which is the
// recursion rule.
std::set<rr::Template> flat_frames() {
  std::set<rr::Template> out;
  for (int i = 1; i < rr::kTemplateCount; ++i) {
    auto t = static_cast<rr::Template>(i);
    if (t != rr::Template::kCpTaking) out.insert(t);
  }
  return out;
}

// ---- criteria --------------------------------------------------------------

Outcome c1() {
  auto path = data_file("test.tsv");
  if (!path) return {Status::kSkip, "RR_DATA_DIR not set"};
  auto rows = rr::load_tsv(*path).rows;
  auto t0 = std::chrono::steady_clock::now();
  auto outcomes = rr::decode_rows(rows, lex(), rr::DecodeOptions{});
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  auto rep = rr::score_by_category(rows, outcomes, "test").front();
  bool ok = rep.n > 0 && rep.sem_matches == rep.n && rep.string_matches == rep.n &&
            secs < kTestTimeLimitSeconds;
  return pass_if(ok, fmt("n=%zu sem=%zu em=%zu ci=(%.4f,%.4f) seconds=%.2f", rep.n,
                         rep.sem_matches, rep.string_matches, rep.ci_low, rep.ci_high, secs));
}

Outcome c1_fallback() {
  rr::FuzzOptions opt;
  opt.pp_depth = 2;
  opt.cp_depth = 2;
  rr::Fuzzer fz(grammar(), lex(), opt, 1);
  OracleTally t;
  for (std::size_t i = 0; i < kFallbackSentences; ++i) t.add(fz.next());
  return pass_if(t.n == kFallbackSentences && t.all_sem() && t.all_em(), t.summary());
}

Outcome c2() {
  auto path = data_file("gen.tsv");
  if (!path) return {Status::kSkip, "RR_DATA_DIR not set"};
  auto rows = rr::load_tsv(*path).rows;
  auto outcomes = rr::decode_rows(rows, lex(), rr::DecodeOptions{});
  bool ok = true;
  std::string detail;
  bool saw_obj_pp = false;
  for (const auto& rep : rr::score_by_category(rows, outcomes, "gen")) {
    if (rep.split == "gen") continue;
    bool split_ok;
    if (rep.split == "obj_pp_to_subj_pp") {
      saw_obj_pp = true;
      split_ok = rep.n == kObjPpRows &&
                 std::abs(100 * rep.sem_rate() - kObjPpTarget) <= kObjPpTolerancePt;
    } else if (rep.split == "pp_recursion" || rep.split == "cp_recursion") {
      split_ok = rep.sem_matches == rep.n && rep.string_matches == rep.n;
    } else {
      split_ok = rep.sem_matches == rep.n;
    }
    ok = ok && split_ok;
    if (!split_ok || rep.split == "obj_pp_to_subj_pp") {
      detail += fmt("%s=%.2f%%(em %.2f%%) ", rep.split.c_str(), 100 * rep.sem_rate(),
                    100 * rep.em_rate());
    }
  }
  ok = ok && saw_obj_pp;
  return pass_if(ok, fmt("rows=%zu ", rows.size()) + detail);
}

// Forced chains shaped like the recursion splits: one pp chain of exactly
// the given depth, or a cp nesting of exactly the given depth.
Outcome c2_recursion() {
  OracleTally pp, cp;
  for (int depth = 1; depth <= kMaxRecursionDepth; ++depth) {
    rr::FuzzOptions po;
    po.pp_depth = depth;
    po.cp_depth = 0;
    po.pp_bias = 1;
    rr::Fuzzer pf(grammar(), lex(), po, 100 + depth);
    rr::FuzzOptions co;
    co.pp_depth = 0;
    co.cp_depth = depth;
    co.cp_bias = 1;
    rr::Fuzzer cf(grammar(), lex(), co, 200 + depth);
    std::size_t kept = 0;
    for (std::size_t tries = 0; kept < kRecursionSamplesPerDepth && tries < 10000; ++tries) {
      rr::FuzzSample p = pf.next();
      if (count_label(p.tree, "<pp>") != std::size_t(depth)) continue;
      pp.add(p);
      ++kept;
    }
    if (kept < kRecursionSamplesPerDepth) return {Status::kFail, fmt("few pp chains at %d", depth)};
    for (std::size_t i = 0; i < kRecursionSamplesPerDepth; ++i) {
      rr::FuzzSample c = cf.next();
      if (count_token(c.tokens, "that") != std::size_t(depth)) {
        return {Status::kFail, fmt("cp chain depth %zu, wanted %d: %s",
                                   count_token(c.tokens, "that"), depth, c.sentence.c_str())};
      }
      cp.add(c);
    }
  }
  bool ok = pp.all_sem() && pp.all_em() && cp.all_sem() && cp.all_em();
  return pass_if(ok, "pp[" + pp.summary() + "] cp[" + cp.summary() + "]");
}

Outcome c3() {
  auto first21 = read_lines(source_path("data/coverage/cogs_train_first21.txt"));
  auto hand = read_lines(source_path("data/coverage/handpicked19.txt"));
  auto extras = read_lines(source_path("data/coverage/pp_cp_extras.txt"));
  auto a = rr::coverage(first21, lex());
  auto b = rr::coverage(hand, lex());
  auto all = hand;
  all.insert(all.end(), extras.begin(), extras.end());
  auto c = rr::coverage(all, lex());
  std::size_t universe = rr::max_expansion_coverage(grammar()).size();
  bool ok = first21.size() == 21 && hand.size() == 19 && a.fraction == 0.7115384615384616 &&
            b.fraction == 0.9230769230769231 && c.fraction == 1.0 && c.missing.empty() &&
            universe == kUniverseSize;
  return pass_if(ok, fmt("first21=%.16g handpicked=%.16g with_extras=%.16g missing=%zu "
                         "universe=%zu",
                         a.fraction, b.fraction, c.fraction, c.missing.size(), universe));
}

Outcome c4() {
  auto path = data_file("train.tsv");
  if (!path) return {Status::kSkip, "RR_DATA_DIR not set"};
  std::vector<std::set<std::string>> keys;
  std::size_t out_of_grammar = 0;
  for (const auto& r : rr::load_tsv(*path).rows) {
    try {
      keys.push_back(rr::expansion_keys(rr::parse_sentence(rr::tokenize(r.sentence), lex())));
    } catch (const rr::Error&) {
      keys.emplace_back();
      ++out_of_grammar;
    }
  }
  auto c = rr::coverage_curve(keys, rr::max_expansion_coverage(grammar()), kCurveShuffles,
                              kCurveSeed);
  bool ok = c.unshuffled == kUnshuffledTarget && c.median >= kMedianLow &&
            c.median <= kMedianHigh && std::abs(c.p025 - kIntervalLow) <= kIntervalTolerance &&
            std::abs(c.p975 - kIntervalHigh) <= kIntervalTolerance && c.never_reached == 0;
  return pass_if(ok, fmt("rows=%zu out_of_grammar=%zu unshuffled=%zu median=%.1f "
                         "interval=(%.1f,%.1f) never_reached=%zu",
                         keys.size(), out_of_grammar, c.unshuffled, c.median, c.p025, c.p975,
                         c.never_reached));
}

Outcome c5() {
  rr::FuzzOptions opt;
  opt.pp_depth = 2;
  opt.cp_depth = 0;
  opt.pp_bias = 0.6;
  rr::Fuzzer fz(grammar(), lex(), opt, 5);
  std::size_t cases = 0, matched = 0;
  std::map<std::size_t, std::size_t> by_depth;
  std::string first_failure;
  for (std::size_t i = 0; i < 200000 && cases < 2 * kAblationMinCases; ++i) {
    rr::FuzzSample s = fz.next();
    if (rr::has_cp(s.tree) || rr::verb_count(s.tree) != 1 || !rr::subject_has_pp(s.tree)) {
      continue;
    }
    if (rr::get_agent_side(s.tree) != rr::AgentSide::kLeft) continue;
    std::size_t depth = subject_pp_depth(s.tree);
    if (depth == 0) continue;  // a pp outside the subject
    ++cases;
    ++by_depth[depth];
    bool ok = false;
    try {
      auto d = rr::classify_error(rr::lf_oracle(s.tree, lex()), rr::decode_ablated(s.tokens, lex()),
                                  rr::predict_attraction_error(s.tree));
      ok = d.single_atom && d.relation == "agent" && d.matches_prediction;
    } catch (const rr::Error&) {
    }
    matched += ok;
    if (!ok && first_failure.empty()) first_failure = s.sentence;
  }
  bool ok = cases >= kAblationMinCases && matched == cases && by_depth.count(1) &&
            by_depth.count(2);
  std::string detail = fmt("cases=%zu matched=%zu depth1=%zu depth2=%zu", cases, matched,
                           by_depth[1], by_depth[2]);
  if (!first_failure.empty()) detail += " first_failure=[" + first_failure + "]";
  return pass_if(ok, detail);
}

Outcome c6() {
  // Four generators with different depth pressure share the sample budget.
  std::vector<rr::FuzzOptions> configs(4);
  for (auto& o : configs) {
    o.pp_depth = kMaxRecursionDepth;
    o.cp_depth = 3;
  }
  configs[1].pp_bias = 0.5;
  configs[2].cp_bias = 0.5;
  configs[3].coverage_guided = true;
  std::vector<rr::Fuzzer> fuzzers;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    fuzzers.emplace_back(grammar(), lex(), configs[i], 600 + i);
  }
  OracleTally t;
  std::set<rr::Template> frames;
  std::size_t max_pp = 0, max_cp = 0;
  for (std::size_t i = 0; i < kOracleSentences; ++i) {
    rr::FuzzSample s = fuzzers[i % fuzzers.size()].next();
    for (const auto& c : rr::encode(s.tokens, lex()).clauses) frames.insert(c.tmpl);
    max_cp = std::max(max_cp, count_token(s.tokens, "that"));
    max_pp = std::max(max_pp, count_label(s.tree, "<pp>"));
    t.add(s);
  }
  std::set<rr::Template> want = flat_frames();
  std::vector<std::string> absent;
  for (auto f : want) {
    if (!frames.count(f)) absent.emplace_back(rr::template_name(f));
  }
  bool ok = t.all_sem() && want.size() == kFrameCount && absent.empty() && max_cp <= 3;
  std::string detail = t.summary() + fmt(" frames=%zu/%zu max_cp=%zu max_pp_total=%zu",
                                         want.size() - absent.size(), want.size(), max_cp, max_pp);
  for (const auto& v : absent) detail += " absent=" + v;
  return pass_if(ok, detail);
}

Outcome c7() {
  struct Case {
    std::size_t k, n;
    double lo, hi;
  };
  const Case cases[] = {{3000, 3000, 0.9988, 1.0}, {1000, 1000, 0.9963, 1.0},
                        {922, 1000, 0.9036, 0.9379}};
  bool ok = true;
  std::string detail;
  for (const auto& c : cases) {
    auto [lo, hi] = rr::clopper_pearson(c.k, c.n);
    ok = ok && std::abs(lo - c.lo) <= kCpTolerance && std::abs(hi - c.hi) <= kCpTolerance;
    detail += fmt("(%zu,%zu)->(%.6f,%.6f) ", c.k, c.n, lo, hi);
  }
  return pass_if(ok, detail);
}

bool has_liam_pair(const std::vector<rr::DatasetRow>& rows) {
  for (const auto& r : rows) {
    if (r.sentence == kLiamAugSentence && r.lf == kLiamAugLf) return true;
  }
  return false;
}

std::size_t reparse_failures(const std::vector<rr::DatasetRow>& rows) {
  std::size_t bad = 0;
  for (const auto& r : rows) bad += !rr::parses(rr::tokenize(r.sentence), lex());
  return bad;
}

Outcome c8() {
  auto path = data_file("train.tsv");
  if (!path) return {Status::kSkip, "RR_DATA_DIR not set"};
  auto rows = rr::load_tsv(*path).rows;
  bool has_source = false;
  for (const auto& r : rows) has_source = has_source || r.sentence == kLiamSentence;
  auto s = rr::augment_all(rows, lex());
  std::size_t bad = reparse_failures(s.rows);
  bool pair = has_liam_pair(s.rows);
  bool ok = s.rows.size() == kAugmentRows && has_source && pair && bad == 0;
  return pass_if(ok, fmt("input=%zu augmented=%zu liam_source=%d liam_pair=%d reparse_failures=%zu",
                         rows.size(), s.rows.size(), has_source, pair, bad));
}

Outcome c8_pair() {
  rr::DatasetRow row{kLiamSentence, kLiamLf, "in_distribution", 1};
  auto s = rr::augment_all({row}, lex());
  std::size_t bad = reparse_failures(s.rows);
  bool pair = has_liam_pair(s.rows);
  return pass_if(s.rows.size() == 1 && pair && bad == 0,
                 fmt("augmented=%zu liam_pair=%d reparse_failures=%zu", s.rows.size(), pair, bad));
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1", c1},  {"1-fallback", c1_fallback}, {"2", c2}, {"2-recursion", c2_recursion},
      {"3", c3},  {"4", c4},  {"5", c5},  {"6", c6},  {"7", c7},  {"8", c8},  {"8-pair", c8_pair},
  };
  CLI::App app{"Acceptance checks"};
  std::string which = "all";
  app.add_option("--criterion", which, "Criterion id, or all");
  CLI11_PARSE(app, argc, argv);

  bool any_fail = false, any_run = false, found = false;
  for (const auto& [id, fn] : criteria) {
    if (which != "all" && which != id) continue;
    found = true;
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {Status::kFail, std::string("exception: ") + e.what()};
    }
    const char* tag = o.status == Status::kPass ? "PASS" : o.status == Status::kFail ? "FAIL" : "SKIP";
    std::printf("%s c%s %s\n", tag, id.c_str(), o.detail.c_str());
    std::fflush(stdout);
    any_fail = any_fail || o.status == Status::kFail;
    any_run = any_run || o.status != Status::kSkip;
  }
  if (!found) {
    std::fprintf(stderr, "unknown criterion %s\n", which.c_str());
    return 2;
  }
  if (any_fail) return 1;
  return any_run ? 0 : 77;
}
