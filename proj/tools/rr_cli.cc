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


// Command-line front end: run, coverage, fuzz, augment, analyze-errors,
// decode.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rr/augment.h"
#include "rr/dataset.h"
#include "rr/decoder.h"
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

struct Common {
  std::string lexicon;
  std::size_t max_len = rr::rasp::kDefaultMaxLength;
  std::size_t max_steps = 400;
  unsigned threads = 0;
  std::uint64_t seed = 0;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--lexicon", c.lexicon, "Lexicon TSV (default: built in)")
      ->envname("RR_LEXICON");
  cmd->add_option("--max-len", c.max_len, "Maximum combined sequence length")
      ->envname("RR_MAX_LEN")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--max-steps", c.max_steps, "Maximum decode steps")
      ->envname("RR_MAX_STEPS")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--threads", c.threads, "Worker threads (0 = all cores)")
      ->envname("RR_THREADS");
  cmd->add_option("--seed", c.seed, "RNG seed")->envname("RR_SEED");
}

const rr::Lexicon& lexicon_for(const Common& c) {
  static std::optional<rr::Lexicon> loaded;
  if (c.lexicon.empty()) return rr::Lexicon::builtin();
  if (!loaded) loaded = rr::Lexicon::load(c.lexicon);
  return *loaded;
}

rr::DecodeOptions decode_options(const Common& c, bool ablate) {
  rr::DecodeOptions o;
  o.ablate_no_pp_rule = ablate;
  o.max_len = c.max_len;
  o.max_steps = c.max_steps;
  return o;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw rr::DatasetError("cannot open " + path);
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string first = line.substr(0, line.find('\t'));
    if (!first.empty()) out.push_back(first);
  }
  return out;
}

// ---- run -------------------------------------------------------------------

struct RunArgs {
  Common common;
  std::string data;
  std::vector<std::string> files;
  std::string split;
  bool test = false;
  bool gen = false;
  bool dev = false;
  bool ablate = false;
  double min_sem = -1;
  std::string out;
};

std::string failure_note(const rr::DatasetRow& row, const rr::RowOutcome& o) {
  if (!o.error.empty()) return "decode_error: " + o.error;
  try {
    auto d = rr::classify_error(rr::parse_lf(row.lf), rr::parse_lf(o.output));
    return rr::describe(d);
  } catch (const std::exception& e) {
    return std::string("unclassified: ") + e.what();
  }
}

int cmd_run(const RunArgs& a) {
  const rr::Lexicon& lex = lexicon_for(a.common);
  std::vector<std::pair<std::string, fs::path>> inputs;
  for (const auto& f : a.files) inputs.emplace_back(fs::path(f).stem().string(), f);
  if (inputs.empty()) {
    if (a.data.empty()) throw rr::PreconditionError("pass --data DIR (or RR_DATA_DIR) or --file");
    bool any = a.test || a.gen || a.dev;
    if (a.test || !any) inputs.emplace_back("test", fs::path(a.data) / "test.tsv");
    if (a.gen) inputs.emplace_back("gen", fs::path(a.data) / "gen.tsv");
    if (a.dev) inputs.emplace_back("dev", fs::path(a.data) / "dev.tsv");
  }
  std::ostringstream human;
  std::ostringstream kv;
  std::ostringstream failures;
  bool missed = false;
  for (const auto& [name, path] : inputs) {
    std::vector<rr::DatasetRow> rows = rr::load_tsv(path).rows;
    if (!a.split.empty()) {
      std::vector<rr::DatasetRow> kept;
      for (auto& r : rows) {
        if (r.category == a.split) kept.push_back(std::move(r));
      }
      rows = std::move(kept);
      if (rows.empty()) throw rr::PreconditionError("no rows in split " + a.split);
    }
    auto outcomes = rr::decode_rows(rows, lex, decode_options(a.common, a.ablate), a.common.threads);
    for (const auto& rep : rr::score_by_category(rows, outcomes, name)) {
      human << rr::human_line(rep) << "\n";
      kv << rr::key_values(rep) << "\n";
      if (a.min_sem >= 0 && rep.sem_rate() < a.min_sem) missed = true;
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (!outcomes[i].error.empty() || !rr::semantic_exact_match(rows[i].lf, outcomes[i].output)) {
        failures << rows[i].sentence << '\t' << rows[i].lf << '\t' << outcomes[i].output << '\t'
                 << failure_note(rows[i], outcomes[i]) << '\n';
      }
    }
  }
  std::cout << human.str() << kv.str();
  if (!a.out.empty()) {
    fs::create_directories(a.out);
    std::ofstream(fs::path(a.out) / "report.txt") << human.str();
    std::ofstream(fs::path(a.out) / "report.kv") << kv.str();
    std::ofstream(fs::path(a.out) / "failures.tsv") << failures.str();
  }
  if (missed) {
    std::cerr << "sem below --min-sem " << a.min_sem << "\n";
    return 1;
  }
  return 0;
}

// ---- coverage --------------------------------------------------------------

struct CoverageArgs {
  Common common;
  std::vector<std::string> files;
  bool curve = false;
  std::size_t shuffles = 1000;
};

int cmd_coverage(const CoverageArgs& a) {
  const rr::Lexicon& lex = lexicon_for(a.common);
  const rr::Grammar& g = rr::Grammar::cogs();
  if (a.curve) {
    std::vector<std::set<std::string>> keys;
    std::size_t dropped = 0;
    for (const auto& f : a.files) {
      // Out-of-grammar rows keep their slot so example counts follow file order.
      for (const auto& r : rr::load_tsv(f).rows) {
        try {
          keys.push_back(rr::expansion_keys(rr::parse_sentence(rr::tokenize(r.sentence), lex, g)));
        } catch (const rr::Error&) {
          keys.emplace_back();
          ++dropped;
        }
      }
    }
    auto c = rr::coverage_curve(keys, rr::max_expansion_coverage(g), a.shuffles, a.common.seed);
    std::printf("rows=%zu out_of_grammar=%zu\n", keys.size(), dropped);
    std::printf("unshuffled_examples_to_full=%zu\n", c.unshuffled);
    std::printf("shuffles=%zu median=%.1f p2.5=%.1f p97.5=%.1f never_reached=%zu\n",
                a.shuffles, c.median, c.p025, c.p975, c.never_reached);
    return 0;
  }
  std::vector<std::string> sentences;
  for (const auto& f : a.files) {
    auto lines = read_lines(f);
    sentences.insert(sentences.end(), lines.begin(), lines.end());
  }
  auto r = rr::coverage(sentences, lex, g);
  std::printf("sentences=%zu observed=%zu universe=%zu\n", sentences.size(),
              r.observed.size(), r.universe.size());
  std::printf("coverage=%.16g\n", r.fraction);
  for (const auto& m : r.missing) std::printf("missing %s\n", m.c_str());
  return 0;
}

// ---- fuzz ------------------------------------------------------------------

struct FuzzArgs {
  Common common;
  rr::FuzzOptions options;
  std::size_t count = 100;
  bool check = false;
  std::string out;
};

int cmd_fuzz(const FuzzArgs& a) {
  const rr::Lexicon& lex = lexicon_for(a.common);
  rr::Fuzzer fz(rr::Grammar::cogs(), lex, a.options, a.common.seed);
  std::vector<rr::DatasetRow> rows;
  for (std::size_t i = 0; i < a.count; ++i) {
    rr::FuzzSample s = fz.next();
    rows.push_back({s.sentence, rr::lf_oracle_text(s.tree, lex),
                    "fuzz_pp" + std::to_string(a.options.pp_depth) + "_cp" +
                        std::to_string(a.options.cp_depth),
                    i + 1});
  }
  std::size_t universe = rr::max_expansion_coverage(rr::Grammar::cogs()).size();
  std::fprintf(stderr, "generated=%zu coverage=%.16g\n", rows.size(),
               double(fz.seen().size()) / double(universe));
  if (!a.out.empty()) {
    rr::write_tsv(a.out, rows);
  } else {
    for (const auto& r : rows) std::cout << r.sentence << '\t' << r.lf << '\t' << r.category << '\n';
  }
  if (!a.check) return 0;
  auto outcomes = rr::decode_rows(rows, lex, decode_options(a.common, false), a.common.threads);
  auto rep = rr::score_by_category(rows, outcomes, "fuzz").front();
  std::fprintf(stderr, "%s\n", rr::key_values(rep).c_str());
  return rep.sem_matches == rep.n && rep.string_matches == rep.n ? 0 : 1;
}

// ---- augment ---------------------------------------------------------------

struct AugmentArgs {
  Common common;
  std::string data;
  std::string file;
  std::string out;
};

int cmd_augment(const AugmentArgs& a) {
  const rr::Lexicon& lex = lexicon_for(a.common);
  fs::path in = a.file.empty() ? fs::path(a.data) / "train.tsv" : fs::path(a.file);
  if (a.file.empty() && a.data.empty()) throw rr::PreconditionError("pass --data DIR or --file");
  auto rows = rr::load_tsv(in).rows;
  auto s = rr::augment_all(rows, lex);
  if (!a.out.empty()) {
    rr::write_tsv(a.out, s.rows);
  } else {
    for (const auto& r : s.rows) std::cout << r.sentence << '\t' << r.lf << '\t' << r.category << '\n';
  }
  std::fprintf(stderr, "input=%zu augmented=%zu skipped=%zu\n", rows.size(), s.rows.size(),
               s.skipped);
  return 0;
}

// ---- analyze-errors --------------------------------------------------------

struct AnalyzeArgs {
  Common common;
  std::string failures;
};

int cmd_analyze(const AnalyzeArgs& a) {
  const rr::Lexicon& lex = lexicon_for(a.common);
  std::ifstream in(a.failures);
  if (!in) throw rr::DatasetError("cannot open " + a.failures);
  std::size_t considered = 0, single = 0, agent_left_agent = 0, matched = 0, skipped = 0;
  std::map<std::string, std::size_t> table;  // "<side> <relation>"
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string x; std::getline(ss, x, '\t');) f.push_back(x);
    if (f.size() < 3) {
      ++skipped;
      continue;
    }
    try {
      auto tree = rr::parse_sentence(rr::tokenize(f[0]), lex);
      if (rr::has_cp(tree) || rr::verb_count(tree) != 1) {
        ++skipped;
        continue;
      }
      auto side = rr::get_agent_side(tree);
      std::optional<std::size_t> pred;
      if (side == rr::AgentSide::kLeft && rr::subject_has_pp(tree)) {
        pred = rr::predict_attraction_error(tree);
      }
      auto d = rr::classify_error(rr::parse_lf(f[1]), rr::parse_lf(f[2]), pred);
      ++considered;
      if (!d.single_atom) continue;
      ++single;
      std::string side_name = side == rr::AgentSide::kLeft ? "left" : "right_or_middle";
      ++table[side_name + " " + d.relation];
      if (side == rr::AgentSide::kLeft && d.relation == "agent") {
        ++agent_left_agent;
        if (d.matches_prediction) ++matched;
      }
    } catch (const std::exception&) {
      ++skipped;
    }
  }
  std::printf("considered=%zu single_atom=%zu skipped=%zu\n", considered, single, skipped);
  for (const auto& [k, v] : table) std::printf("single_atom %s %zu\n", k.c_str(), v);
  std::printf("agent_left_agent_errors=%zu matching_prediction=%zu rate=%.4f\n",
              agent_left_agent, matched,
              agent_left_agent ? double(matched) / double(agent_left_agent) : 0.0);
  return 0;
}

// ---- decode ----------------------------------------------------------------

struct DecodeArgs {
  Common common;
  std::vector<std::string> sentences;
  bool ablate = false;
};

int cmd_decode(const DecodeArgs& a) {
  const rr::Lexicon& lex = lexicon_for(a.common);
  std::vector<std::string> sentences = a.sentences;
  if (sentences.empty()) {
    for (std::string line; std::getline(std::cin, line);) {
      if (!line.empty()) sentences.push_back(line);
    }
  }
  int status = 0;
  for (const auto& s : sentences) {
    try {
      std::cout << rr::decode_text(rr::tokenize(s), lex, decode_options(a.common, a.ablate)) << "\n";
    } catch (const rr::Error& e) {
      std::cout << "error: " << e.what() << "\n";
      status = 1;
    }
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Flat RASP-style semantic parser for ReCOGS_pos"};
  app.require_subcommand(1);

  RunArgs run;
  auto* c_run = app.add_subcommand("run", "Decode dataset splits and score them");
  add_common(c_run, run.common);
  c_run->add_option("--data", run.data, "Directory holding train/dev/test/gen .tsv")
      ->envname("RR_DATA_DIR");
  c_run->add_option("--file", run.files, "Explicit TSV files to score");
  c_run->add_option("--split", run.split, "Only rows of this category");
  c_run->add_flag("--use_test_split", run.test, "Score test.tsv (default)");
  c_run->add_flag("--use_gen_split", run.gen, "Score gen.tsv");
  c_run->add_flag("--use_dev_split", run.dev, "Score dev.tsv");
  c_run->add_flag("--ablate-no-pp-rule", run.ablate, "Count pp nouns as arguments");
  c_run->add_option("--min-sem", run.min_sem, "Exit 1 if any split scores below this SEM rate");
  c_run->add_option("--out", run.out, "Directory for report.txt, report.kv, failures.tsv")
      ->envname("RR_OUT");

  CoverageArgs cov;
  auto* c_cov = app.add_subcommand("coverage", "Grammar expansion coverage of sentences");
  add_common(c_cov, cov.common);
  c_cov->add_option("files", cov.files, "Sentence-per-line files (first TSV field used)")
      ->required();
  c_cov->add_flag("--curve", cov.curve, "Treat files as dataset TSV and report examples to full coverage");
  c_cov->add_option("--shuffles", cov.shuffles, "Shuffles for --curve");

  FuzzArgs fuzz;
  auto* c_fuzz = app.add_subcommand("fuzz", "Generate in-grammar sentences with oracle LFs");
  add_common(c_fuzz, fuzz.common);
  c_fuzz->add_option("--count", fuzz.count, "Sentences to generate");
  c_fuzz->add_option("--pp-depth", fuzz.options.pp_depth, "Longest pp chain")
      ->envname("RR_PP_DEPTH")
      ->check(CLI::Range(0, 64));
  c_fuzz->add_option("--cp-depth", fuzz.options.cp_depth, "Deepest cp nesting")
      ->envname("RR_CP_DEPTH")
      ->check(CLI::Range(0, 64));
  c_fuzz->add_option("--pp-bias", fuzz.options.pp_bias, "Probability of recursing into a pp")
      ->check(CLI::Range(0.0, 1.0));
  c_fuzz->add_option("--cp-bias", fuzz.options.cp_bias, "Probability of recursing into a cp")
      ->check(CLI::Range(0.0, 1.0));
  c_fuzz->add_flag("--guided", fuzz.options.coverage_guided, "Prefer unseen expansions");
  c_fuzz->add_flag("--check", fuzz.check, "Decode every sentence and compare with the oracle");
  c_fuzz->add_option("--out", fuzz.out, "TSV output (default stdout)")->envname("RR_OUT");

  AugmentArgs aug;
  auto* c_aug = app.add_subcommand("augment", "Move theme pps onto v_dat_p2 recipients");
  add_common(c_aug, aug.common);
  c_aug->add_option("--data", aug.data, "Directory holding train.tsv")->envname("RR_DATA_DIR");
  c_aug->add_option("--file", aug.file, "Input TSV instead of DATA/train.tsv");
  c_aug->add_option("--out", aug.out, "TSV output (default stdout)")->envname("RR_OUT");

  AnalyzeArgs an;
  auto* c_an = app.add_subcommand("analyze-errors", "Tabulate single-atom errors and attraction predictions");
  add_common(c_an, an.common);
  c_an->add_option("failures", an.failures, "failures.tsv written by run --out")->required();

  DecodeArgs dec;
  auto* c_dec = app.add_subcommand("decode", "Decode sentences from arguments or stdin");
  add_common(c_dec, dec.common);
  c_dec->add_option("sentences", dec.sentences, "Sentences");
  c_dec->add_flag("--ablate-no-pp-rule", dec.ablate, "Count pp nouns as arguments");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*c_run) return cmd_run(run);
    if (*c_cov) return cmd_coverage(cov);
    if (*c_fuzz) return cmd_fuzz(fuzz);
    if (*c_aug) return cmd_augment(aug);
    if (*c_an) return cmd_analyze(an);
    if (*c_dec) return cmd_decode(dec);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
