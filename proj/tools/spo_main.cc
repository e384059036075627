// Copyright 2026 The spo-narrative Authors.
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

// spo: extract | evaluate | validate-rules
//
// Exit status: 0 success, 1 input error, 2 internal invariant violation.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "spo/evaluation.h"
#include "spo/ingest.h"
#include "spo/pipeline.h"
#include "spo/rules.h"

namespace fs = std::filesystem;

namespace {

struct Common {
  std::string config_path;
  std::optional<int> jobs;
};

spo::Config load_common(const Common& c) {
  spo::Config config;
  if (!c.config_path.empty()) config = spo::load_config(c.config_path);
  if (c.jobs) config.jobs = *c.jobs;
  return config;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw spo::InputError("cannot write " + path.string());
  out << text;
  if (!out) throw spo::InputError("cannot write " + path.string());
}

struct ExtractArgs {
  std::string corpus, coref, rules, out;
};

int run_extract(const ExtractArgs& a, const Common& common) {
  spo::Config config = load_common(common);
  spo::RuleSet rules = spo::load_rules(a.rules);
  if (!config.modifier_deprels.empty()) rules.modifier_deprels = config.modifier_deprels;

  std::optional<fs::path> coref;
  if (!a.coref.empty()) coref = a.coref;
  spo::Corpus corpus = spo::read_corpus(a.corpus, coref);
  for (const auto& r : corpus.report.rejected_documents) {
    std::cerr << "rejected " << r.doc_id << ": " << r.reason << "\n";
  }
  for (const auto& w : corpus.report.warnings) std::cerr << "warning: " << w << "\n";

  spo::PipelineOptions options;
  options.chain_depth = config.chain_depth;
  auto results = config.jobs > 1
                     ? spo::process_corpus_parallel(corpus.documents, rules, options, config.jobs)
                     : spo::process_corpus_serial(corpus.documents, rules, options);

  std::string body;
  for (const auto& r : results) {
    body += spo::to_json_line(r);
    body += '\n';
  }
  write_text(a.out, body);

  const auto s = spo::summarize(results);
  std::cout << "documents: " << s.documents << "\n"
            << "rejected documents: " << corpus.report.rejected_documents.size() << "\n"
            << "documents with >=1 triple: " << s.documents_with_triples << "\n"
            << "unique triples: " << s.unique_triples << "\n"
            << "chains: " << s.chains << "\n"
            << "documents with >=1 chain: " << s.documents_with_chains << "\n"
            << "typed terms: " << s.typed_terms << "\n"
            << "documents with >=1 term: " << s.documents_with_terms << "\n"
            << "semantic edges: " << s.edges << "\n";
  return 0;
}

struct EvaluateArgs {
  std::string extraction, gold, rules, out, replay;
};

// Without a rule file the catalog comes from the rule ids recorded in the
// extraction; a rule's type is the type of the terms it fired on.
std::vector<spo::RuleInfo> infer_catalog(const spo::ExtractionFile& file) {
  std::map<std::string, spo::RuleInfo> seen;
  for (const auto& t : file.terms) {
    for (const auto& id : t.fired_rules) {
      if (seen.count(id)) continue;
      spo::RuleInfo info;
      info.id = id;
      info.type = t.type;
      info.slot = id.empty() ? 'o' : id.front();
      seen.emplace(id, info);
    }
  }
  std::vector<spo::RuleInfo> out;
  for (const auto& id : file.rule_ids) out.push_back(seen.at(id));
  return out;
}

std::string scored_csv(const std::vector<spo::ScoredExtraction>& scored) {
  std::string out = "doc_id,entity_type,phrase,correct,w_e\n";
  for (const auto& s : scored) {
    out += s.term.doc_id + "," + std::string(spo::entity_type_name(s.term.entity_type)) + ",\"" +
           s.term.phrase + "\"," + (s.term.correct ? "1" : "0") + "," +
           spo::format_fixed(s.w_e, 6) + "\n";
  }
  return out;
}

int run_evaluate(const EvaluateArgs& a, const Common& common) {
  spo::Config config = load_common(common);
  fs::create_directories(a.out);
  const fs::path out = a.out;

  std::vector<spo::RuleStats> stats;
  std::vector<spo::TypeAggregate> aggregates;
  if (!a.replay.empty()) {
    stats = spo::parse_stats_replay(spo::read_file(a.replay));
    aggregates = spo::aggregate_without_gold(stats);
  } else {
    if (a.extraction.empty() || a.gold.empty()) {
      throw spo::InputError("evaluate needs --extraction and --gold (or --replay)");
    }
    auto file = spo::parse_extraction(spo::read_file(a.extraction));
    auto gold = spo::read_gold_labels(a.gold);
    for (const auto& w : gold.warnings) std::cerr << "warning: " << w << "\n";
    std::vector<spo::RuleInfo> catalog =
        a.rules.empty() ? infer_catalog(file) : spo::rule_catalog(spo::load_rules(a.rules));
    spo::EvaluationOptions options;
    options.eq1_strict = config.eq1_strict;
    auto result = spo::evaluate(file.terms, catalog, gold.labels, file.documents, options);
    for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
    stats = std::move(result.stats);
    aggregates = std::move(result.aggregates);
    write_text(out / "scored_terms.csv", scored_csv(result.scored));
  }

  auto report = spo::render_stats_table(stats, aggregates);
  write_text(out / "rule_stats.csv", report.stats_csv);
  write_text(out / "aggregate.csv", report.aggregate_csv);
  write_text(out / "report.txt", report.table);
  std::cout << report.table;
  return 0;
}

int run_validate(const std::string& path) {
  spo::RuleSet rules;
  try {
    rules = spo::parse_rules(spo::read_file(path));
  } catch (const spo::RuleError& e) {
    std::cout << "error: " << e.what() << "\n";
    return 1;
  }
  auto diagnostics = spo::validate_rules(rules);
  for (const auto& d : diagnostics) std::cout << spo::format_diagnostic(d) << "\n";
  const bool failed = spo::has_errors(diagnostics);
  std::cout << (rules.triple_rules.size() + rules.entity_rules.size()) << " rules, "
            << diagnostics.size() << " diagnostics" << (failed ? ", invalid" : ", ok") << "\n";
  return failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rule-based triple and entity extraction over dependency parses"};
  app.require_subcommand(1);
  Common common;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", common.config_path, "key = value settings file");
    sub->add_option("--jobs", common.jobs, "worker threads")->check(CLI::PositiveNumber);
  };

  ExtractArgs ex;
  auto* extract = app.add_subcommand("extract", "Extract triples, chains and typed terms");
  extract->add_option("--corpus", ex.corpus, "CoNLL-U corpus")->required();
  extract->add_option("--coref", ex.coref, "coreference sidecar (JSON lines)");
  extract->add_option("--rules", ex.rules, "rule file")->required();
  extract->add_option("--out", ex.out, "output JSON-lines file")->required();
  add_common(extract);

  EvaluateArgs ev;
  auto* evaluate = app.add_subcommand("evaluate", "Score rules against judged terms");
  evaluate->add_option("--extraction", ev.extraction, "extraction JSON-lines");
  evaluate->add_option("--gold", ev.gold, "gold CSV");
  evaluate->add_option("--rules", ev.rules, "rule file (default: infer from extraction)");
  evaluate->add_option("--replay", ev.replay, "confusion counts CSV instead of extraction");
  evaluate->add_option("--out", ev.out, "output directory")->required();
  add_common(evaluate);

  std::string validate_path;
  auto* validate = app.add_subcommand("validate-rules", "Check a rule file");
  validate->add_option("--rules", validate_path, "rule file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*extract) return run_extract(ex, common);
    if (*evaluate) return run_evaluate(ev, common);
    return run_validate(validate_path);
  } catch (const spo::InvariantError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
