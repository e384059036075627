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

// Readers for dependency-annotated corpora (CoNLL-U plus a JSON-lines
// coreference sidecar) and for manually judged gold labels.

#ifndef SPO_INGEST_H_
#define SPO_INGEST_H_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "spo/model.h"

namespace spo {

struct RejectedDocument {
  std::string doc_id;
  std::string reason;

  bool operator==(const RejectedDocument&) const = default;
};

struct IngestReport {
  int documents_read = 0;
  int sentences_read = 0;
  std::vector<RejectedDocument> rejected_documents;
  std::vector<std::string> warnings;
};

struct Corpus {
  std::vector<Document> documents;
  IngestReport report;
};

// Parses CoNLL-U text. Sentences before the first `# newdoc id` comment
// belong to a document named `default_doc_id`. Documents with malformed
// rows or an invalid tree are rejected, not fatal.
Corpus parse_conllu(std::string_view text, std::string_view default_doc_id);

// Attaches coreference chains from JSON-lines sidecar text. Chains that
// reference missing sentences or tokens are dropped with a warning.
void attach_coref(std::string_view sidecar_text, std::vector<Document>& documents,
                  IngestReport& report);

// Throws InputError when a file cannot be read.
Corpus read_corpus(const std::filesystem::path& conllu_path,
                   const std::optional<std::filesystem::path>& coref_path);

// Serializes documents back to CoNLL-U (used by fixtures and tools).
void write_conllu(const std::vector<Document>& documents, std::ostream& out);

// Serializes the coreference chains of `documents` as sidecar lines.
void write_coref_sidecar(const std::vector<Document>& documents, std::ostream& out);

// Index of the head token of a mention: the first token in the span
// whose governor lies outside it.
int mention_head(const Sentence& sentence, const MentionSpan& span);

bool is_pronoun(const Token& token);

// First non-pronominal mention, else the longest one.
int choose_representative(const Document& doc, const CorefChain& chain);

struct GoldLabel {
  std::string doc_id;
  EntityType entity_type = EntityType::kProgramName;
  std::string phrase;  // normalized
  bool correct = false;

  bool operator==(const GoldLabel&) const = default;
};

struct GoldFile {
  std::vector<GoldLabel> labels;
  std::vector<std::string> warnings;
};

GoldFile parse_gold_labels(std::string_view csv_text);
GoldFile read_gold_labels(const std::filesystem::path& path);
void write_gold_labels(const std::vector<GoldLabel>& labels, std::ostream& out);

// Splits one CSV record; handles double-quoted fields with "" escapes.
std::vector<std::string> split_csv_line(std::string_view line);

std::string read_file(const std::filesystem::path& path);

}  // namespace spo

#endif  // SPO_INGEST_H_
