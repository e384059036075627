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

#include "spo/pipeline.h"

#include <omp.h>

#include <algorithm>
#include <exception>

#include "json.hpp"
#include "spo/entities.h"
#include "spo/resolution.h"
#include "spo/triples.h"

namespace spo {
namespace {

using Json = nlohmann::ordered_json;

Json triple_json(const Triple& t) {
  return Json{{"s", t.subject.text},
              {"p", t.predicate.text},
              {"o", t.object.text},
              {"rule", t.source_rule()},
              {"origin", origin_name(t.origin)}};
}

Json mention_ref_json(const EntityMention& m) {
  return Json{{"type", entity_type_name(m.entity_type)}, {"text", m.phrase.text}};
}

}  // namespace

DocumentResult process_document(const Document& doc, const RuleSet& rules,
                                const PipelineOptions& options) {
  DocumentResult result;
  result.doc_id = doc.doc_id;
  const auto& deprels = effective_modifier_deprels(rules);

  auto triples = extract_triples(doc, rules);
  triples = resolve_coreferences(triples, doc);
  triples = expand_conjunctions(triples, doc, deprels);

  ChainClosure closure = chain_closure(triples, options.chain_depth);
  result.entities = extract_entities(triples, closure.chains, rules);

  std::vector<Triple> all = triples;
  all.insert(all.end(), closure.derived.begin(), closure.derived.end());
  result.edges = derive_semantic_edges(result.entities, all);

  result.triples = std::move(triples);
  result.chains = std::move(closure.chains);
  return result;
}

std::vector<DocumentResult> process_corpus_serial(const std::vector<Document>& docs,
                                                  const RuleSet& rules,
                                                  const PipelineOptions& options) {
  std::vector<DocumentResult> out;
  out.reserve(docs.size());
  for (const auto& d : docs) out.push_back(process_document(d, rules, options));
  return out;
}

std::vector<DocumentResult> process_corpus_parallel(const std::vector<Document>& docs,
                                                    const RuleSet& rules,
                                                    const PipelineOptions& options, int jobs) {
  const long n = static_cast<long>(docs.size());
  std::vector<DocumentResult> out(docs.size());
  std::vector<std::exception_ptr> errors(docs.size());
  #pragma omp parallel for schedule(dynamic, 4) num_threads(std::max(jobs, 1))
  for (long i = 0; i < n; ++i) {
    try {
      out[i] = process_document(docs[i], rules, options);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

std::string to_json_line(const DocumentResult& result) {
  Json record;
  record["doc_id"] = result.doc_id;
  record["triples"] = Json::array();
  for (const auto& t : result.triples) record["triples"].push_back(triple_json(t));
  record["chains"] = Json::array();
  for (const auto& c : result.chains) {
    record["chains"].push_back(Json{{"left", triple_json(c.left)},
                                    {"right", triple_json(c.right)},
                                    {"derived", triple_json(c.derived)},
                                    {"cyclic", c.cyclic}});
  }
  record["entities"] = Json::array();
  for (const auto& m : result.entities) {
    Json e{{"type", entity_type_name(m.entity_type)},
           {"text", m.phrase.text},
           {"rules", m.fired_rules}};
    e["w_e"] = m.score ? Json(*m.score) : Json(nullptr);
    record["entities"].push_back(std::move(e));
  }
  record["edges"] = Json::array();
  for (const auto& e : result.edges) {
    record["edges"].push_back(Json{{"relation", relation_name(e.relation)},
                                   {"source", mention_ref_json(e.source)},
                                   {"target", mention_ref_json(e.target)}});
  }
  return record.dump();
}

ExtractionSummary summarize(const std::vector<DocumentResult>& results) {
  ExtractionSummary s;
  for (const auto& r : results) {
    ++s.documents;
    s.unique_triples += static_cast<int>(r.triples.size());
    s.chains += static_cast<int>(r.chains.size());
    s.typed_terms += static_cast<int>(r.entities.size());
    s.edges += static_cast<int>(r.edges.size());
    if (!r.triples.empty()) ++s.documents_with_triples;
    if (!r.chains.empty()) ++s.documents_with_chains;
    if (!r.entities.empty()) ++s.documents_with_terms;
  }
  return s;
}

ExtractionFile parse_extraction(std::string_view jsonl) {
  ExtractionFile file;
  std::set<std::string> ids;
  int line_no = 0;
  size_t start = 0;
  while (start < jsonl.size()) {
    size_t pos = jsonl.find('\n', start);
    if (pos == std::string_view::npos) pos = jsonl.size();
    std::string_view line = jsonl.substr(start, pos - start);
    start = pos + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    const std::string where = "extraction line " + std::to_string(line_no);
    auto record = nlohmann::json::parse(line, nullptr, false);
    if (record.is_discarded() || !record.is_object() || !record.contains("doc_id")) {
      throw InputError(where + ": malformed record");
    }
    try {
      const std::string doc_id = record.at("doc_id").get<std::string>();
      file.documents.insert(doc_id);
      if (!record.contains("entities")) continue;
      for (const auto& e : record.at("entities")) {
        auto type = parse_entity_type(e.at("type").get<std::string>());
        if (!type) throw InputError(where + ": unknown entity type");
        ExtractedTerm term;
        term.doc_id = doc_id;
        term.type = *type;
        term.text = normalize_phrase_text(e.at("text").get<std::string>());
        term.fired_rules = e.at("rules").get<std::vector<std::string>>();
        ids.insert(term.fired_rules.begin(), term.fired_rules.end());
        file.terms.push_back(std::move(term));
      }
    } catch (const nlohmann::json::exception& ex) {
      throw InputError(where + ": " + ex.what());
    }
  }
  file.rule_ids.assign(ids.begin(), ids.end());
  std::sort(file.rule_ids.begin(), file.rule_ids.end(),
            [](const auto& a, const auto& b) { return rule_id_less(a, b); });
  return file;
}

}  // namespace spo
