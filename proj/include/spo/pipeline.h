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

// End-to-end extraction per document: triples, coreference and
// conjunction expansion, chaining, entity typing and semantic edges.
//
// process_corpus_serial is the reference; process_corpus_parallel runs
// the same per-document function under OpenMP and must produce identical
// results in input order.

#ifndef SPO_PIPELINE_H_
#define SPO_PIPELINE_H_

#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "spo/chaining.h"
#include "spo/evaluation.h"
#include "spo/model.h"
#include "spo/rules.h"

namespace spo {

// Key-value settings file:
//   chain-depth = 4
//   eq1-strict = false
//   modifier-deprels = amod compound det nmod:poss flat
//   jobs = 1
struct Config {
  int chain_depth = kDefaultChainDepth;
  bool eq1_strict = false;
  std::vector<std::string> modifier_deprels;  // empty: rule file or default
  int jobs = 1;
};

Config parse_config(std::string_view text);
Config load_config(const std::filesystem::path& path);

struct PipelineOptions {
  int chain_depth = kDefaultChainDepth;
};

struct DocumentResult {
  std::string doc_id;
  std::vector<Triple> triples;
  std::vector<TripleChain> chains;
  std::vector<EntityMention> entities;
  std::vector<SemanticEdge> edges;
};

DocumentResult process_document(const Document& doc, const RuleSet& rules,
                                const PipelineOptions& options = {});

std::vector<DocumentResult> process_corpus_serial(const std::vector<Document>& docs,
                                                  const RuleSet& rules,
                                                  const PipelineOptions& options = {});

std::vector<DocumentResult> process_corpus_parallel(const std::vector<Document>& docs,
                                                    const RuleSet& rules,
                                                    const PipelineOptions& options, int jobs);

// One JSON object, no trailing newline.
std::string to_json_line(const DocumentResult& result);

struct ExtractionSummary {
  int documents = 0;
  int documents_with_triples = 0;
  int unique_triples = 0;
  int chains = 0;
  int documents_with_chains = 0;
  int typed_terms = 0;
  int documents_with_terms = 0;
  int edges = 0;
};

ExtractionSummary summarize(const std::vector<DocumentResult>& results);

struct ExtractionFile {
  std::set<std::string> documents;
  std::vector<ExtractedTerm> terms;
  std::vector<std::string> rule_ids;  // every rule id seen, natural order
};

// Reads extraction JSON-lines back for evaluation.
ExtractionFile parse_extraction(std::string_view jsonl);

}  // namespace spo

#endif  // SPO_PIPELINE_H_
