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

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

#include "json.hpp"
#include "spo/ingest.h"

namespace spo {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  size_t start = 0;
  while (true) {
    size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::optional<int> parse_int(std::string_view s) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

// Returns the doc id of a `# newdoc id = X` comment, if `line` is one.
std::optional<std::string> newdoc_id(std::string_view line) {
  std::string_view body = trim(line.substr(1));
  constexpr std::string_view kKey = "newdoc";
  if (body.substr(0, kKey.size()) != kKey) return std::nullopt;
  body = trim(body.substr(kKey.size()));
  if (body.substr(0, 2) != "id") return std::string();
  body = trim(body.substr(2));
  if (body.empty() || body.front() != '=') return std::string();
  return std::string(trim(body.substr(1)));
}

Features parse_feats(std::string_view col) {
  Features feats;
  if (col == "_" || col.empty()) return feats;
  for (auto item : split(col, '|')) {
    size_t eq = item.find('=');
    if (eq == std::string_view::npos) continue;
    feats.emplace(std::string(item.substr(0, eq)), std::string(item.substr(eq + 1)));
  }
  return feats;
}

bool misc_space_after_no(std::string_view misc) {
  for (auto item : split(misc, '|')) {
    if (item == "SpaceAfter=No") return true;
  }
  return false;
}

struct PendingDocument {
  Document doc;
  Sentence sentence;
  std::optional<std::string> error;
  bool has_content = false;
};

class ConlluParser {
 public:
  explicit ConlluParser(std::string_view default_doc_id) {
    pending_.doc.doc_id = std::string(default_doc_id);
  }

  void line(std::string_view raw, int line_no) {
    std::string_view line = raw;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (trim(line).empty()) {
      end_sentence();
      return;
    }
    if (line.front() == '#') {
      if (auto id = newdoc_id(line)) {
        end_document();
        pending_ = PendingDocument{};
        pending_.doc.doc_id = id->empty() ? "doc" + std::to_string(line_no) : *id;
        pending_.has_content = true;
      }
      return;
    }
    pending_.has_content = true;
    if (pending_.error) return;
    auto cols = split(line, '\t');
    if (cols.size() != 10) {
      fail(line_no, "expected 10 columns");
      return;
    }
    // Multiword ranges and empty nodes are not syntactic words.
    if (cols[0].find('-') != std::string_view::npos ||
        cols[0].find('.') != std::string_view::npos) {
      return;
    }
    auto id = parse_int(cols[0]);
    auto head = parse_int(cols[6]);
    if (!id || !head) {
      fail(line_no, "non-numeric ID or HEAD");
      return;
    }
    Token tok;
    tok.index = *id;
    tok.form = std::string(cols[1]);
    tok.lemma = cols[2] == "_" && cols[1] != "_" ? std::string() : std::string(cols[2]);
    tok.upos = cols[3] == "_" ? std::string() : std::string(cols[3]);
    tok.xpos = cols[4] == "_" ? std::string() : std::string(cols[4]);
    tok.feats = parse_feats(cols[5]);
    tok.head = *head;
    tok.deprel = cols[7] == "_" ? std::string() : std::string(cols[7]);
    tok.space_after = !misc_space_after_no(cols[9]);
    pending_.sentence.tokens.push_back(std::move(tok));
  }

  Corpus finish() {
    end_document();
    return std::move(corpus_);
  }

 private:
  void fail(int line_no, std::string_view what) {
    pending_.error = "malformed line " + std::to_string(line_no) + ": " + std::string(what);
  }

  void end_sentence() {
    if (pending_.sentence.tokens.empty()) return;
    pending_.sentence.sentence_index = static_cast<int>(pending_.doc.sentences.size());
    pending_.doc.sentences.push_back(std::move(pending_.sentence));
    pending_.sentence = Sentence{};
  }

  void end_document() {
    end_sentence();
    if (!pending_.has_content) return;
    auto& report = corpus_.report;
    ++report.documents_read;
    report.sentences_read += static_cast<int>(pending_.doc.sentences.size());
    const std::string& id = pending_.doc.doc_id;
    if (pending_.error) {
      report.rejected_documents.push_back({id, *pending_.error});
    } else if (!seen_.insert(id).second) {
      report.rejected_documents.push_back({id, "duplicate doc_id"});
    } else {
      bool valid = true;
      for (const auto& s : pending_.doc.sentences) {
        if (check_sentence(s)) {
          valid = false;
          break;
        }
      }
      if (valid) {
        corpus_.documents.push_back(std::move(pending_.doc));
      } else {
        report.rejected_documents.push_back({id, "invalid dependency tree"});
      }
    }
    pending_ = PendingDocument{};
  }

  PendingDocument pending_;
  Corpus corpus_;
  std::set<std::string> seen_;
};

bool span_in_document(const Document& doc, const MentionSpan& m) {
  if (m.sentence < 0 || m.sentence >= static_cast<int>(doc.sentences.size())) {
    return false;
  }
  const int n = doc.sentences[m.sentence].size();
  return m.start >= 1 && m.start <= m.end && m.end <= n;
}

bool mention_is_pronominal(const Document& doc, const MentionSpan& m) {
  const Sentence& s = doc.sentences[m.sentence];
  return is_pronoun(s.token(mention_head(s, m)));
}

}  // namespace

Corpus parse_conllu(std::string_view text, std::string_view default_doc_id) {
  ConlluParser parser(default_doc_id);
  int line_no = 0;
  size_t start = 0;
  while (start < text.size()) {
    size_t pos = text.find('\n', start);
    if (pos == std::string_view::npos) pos = text.size();
    parser.line(text.substr(start, pos - start), ++line_no);
    start = pos + 1;
  }
  return parser.finish();
}

int mention_head(const Sentence& sentence, const MentionSpan& span) {
  for (int i = span.start; i <= span.end; ++i) {
    const int h = sentence.token(i).head;
    if (h < span.start || h > span.end) return i;
  }
  return span.start;
}

bool is_pronoun(const Token& token) {
  if (token.upos == "PRON") return true;
  return token.xpos == "PRP" || token.xpos == "PRP$" || token.xpos == "WP" ||
         token.xpos == "WP$";
}

int choose_representative(const Document& doc, const CorefChain& chain) {
  for (size_t i = 0; i < chain.mentions.size(); ++i) {
    if (!mention_is_pronominal(doc, chain.mentions[i])) return static_cast<int>(i);
  }
  int best = 0;
  for (size_t i = 1; i < chain.mentions.size(); ++i) {
    const auto& m = chain.mentions[i];
    const auto& b = chain.mentions[best];
    if (m.end - m.start > b.end - b.start) best = static_cast<int>(i);
  }
  return best;
}

void attach_coref(std::string_view sidecar_text, std::vector<Document>& documents,
                  IngestReport& report) {
  std::unordered_map<std::string, Document*> by_id;
  for (auto& d : documents) by_id.emplace(d.doc_id, &d);
  int line_no = 0;
  size_t start = 0;
  while (start < sidecar_text.size()) {
    size_t pos = sidecar_text.find('\n', start);
    if (pos == std::string_view::npos) pos = sidecar_text.size();
    std::string_view line = trim(sidecar_text.substr(start, pos - start));
    start = pos + 1;
    ++line_no;
    if (line.empty()) continue;
    const std::string where = "coref line " + std::to_string(line_no);

    nlohmann::json record = nlohmann::json::parse(line, nullptr, false);
    if (record.is_discarded() || !record.is_object() || !record.contains("doc_id") ||
        !record["doc_id"].is_string()) {
      report.warnings.push_back(where + ": malformed record");
      continue;
    }
    const std::string doc_id = record["doc_id"].get<std::string>();
    auto it = by_id.find(doc_id);
    if (it == by_id.end()) {
      report.warnings.push_back(where + ": unknown doc_id " + doc_id);
      continue;
    }
    Document& doc = *it->second;
    const nlohmann::json empty = nlohmann::json::array();
    const auto& chains = record.contains("chains") ? record["chains"] : empty;
    const auto& reps = record.contains("representative") ? record["representative"] : empty;
    if (!chains.is_array()) {
      report.warnings.push_back(where + ": chains is not an array");
      continue;
    }
    for (size_t c = 0; c < chains.size(); ++c) {
      const std::string chain_where = where + " chain " + std::to_string(c);
      CorefChain chain;
      bool ok = chains[c].is_array();
      if (ok) {
        for (const auto& m : chains[c]) {
          if (!m.is_object() || !m.contains("sentence") || !m.contains("start") ||
              !m.contains("end") || !m["sentence"].is_number_integer() ||
              !m["start"].is_number_integer() || !m["end"].is_number_integer()) {
            ok = false;
            break;
          }
          MentionSpan span{m["sentence"].get<int>(), m["start"].get<int>(),
                           m["end"].get<int>()};
          if (!span_in_document(doc, span)) {
            ok = false;
            break;
          }
          chain.mentions.push_back(span);
        }
      }
      if (!ok) {
        report.warnings.push_back(chain_where + ": span out of range, chain dropped");
        continue;
      }
      if (chain.mentions.size() < 2) {
        report.warnings.push_back(chain_where + ": fewer than 2 mentions, chain dropped");
        continue;
      }
      int rep = -1;
      if (reps.is_array() && c < reps.size() && reps[c].is_number_integer()) {
        rep = reps[c].get<int>();
      }
      if (rep < 0 || rep >= static_cast<int>(chain.mentions.size()) ||
          mention_is_pronominal(doc, chain.mentions[rep])) {
        rep = choose_representative(doc, chain);
      }
      chain.representative = rep;
      doc.coref_chains.push_back(std::move(chain));
    }
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw InputError("error reading " + path.string());
  return buf.str();
}

Corpus read_corpus(const std::filesystem::path& conllu_path,
                   const std::optional<std::filesystem::path>& coref_path) {
  Corpus corpus = parse_conllu(read_file(conllu_path), conllu_path.stem().string());
  if (coref_path) {
    attach_coref(read_file(*coref_path), corpus.documents, corpus.report);
  }
  return corpus;
}

void write_conllu(const std::vector<Document>& documents, std::ostream& out) {
  auto col = [](const std::string& s) -> const std::string& {
    static const std::string kEmpty = "_";
    return s.empty() ? kEmpty : s;
  };
  for (const auto& doc : documents) {
    out << "# newdoc id = " << doc.doc_id << "\n";
    for (const auto& sent : doc.sentences) {
      for (const auto& t : sent.tokens) {
        std::string feats;
        for (const auto& [k, v] : t.feats) {
          if (!feats.empty()) feats += '|';
          feats += k + "=" + v;
        }
        out << t.index << '\t' << t.form << '\t' << col(t.lemma) << '\t' << col(t.upos)
            << '\t' << col(t.xpos) << '\t' << col(feats) << '\t' << t.head << '\t'
            << col(t.deprel) << "\t_\t" << (t.space_after ? "_" : "SpaceAfter=No")
            << "\n";
      }
      out << "\n";
    }
  }
}

void write_coref_sidecar(const std::vector<Document>& documents, std::ostream& out) {
  for (const auto& doc : documents) {
    if (doc.coref_chains.empty()) continue;
    nlohmann::ordered_json record;
    record["doc_id"] = doc.doc_id;
    record["chains"] = nlohmann::ordered_json::array();
    record["representative"] = nlohmann::ordered_json::array();
    for (const auto& chain : doc.coref_chains) {
      auto mentions = nlohmann::ordered_json::array();
      for (const auto& m : chain.mentions) {
        mentions.push_back({{"sentence", m.sentence}, {"start", m.start}, {"end", m.end}});
      }
      record["chains"].push_back(std::move(mentions));
      record["representative"].push_back(chain.representative);
    }
    out << record.dump() << "\n";
  }
}

}  // namespace spo
