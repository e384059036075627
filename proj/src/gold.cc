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

#include <ostream>

#include "spo/ingest.h"

namespace spo {
namespace {

std::string quote_csv(std::string_view field) {
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

GoldFile parse_gold_labels(std::string_view csv_text) {
  GoldFile gold;
  int line_no = 0;
  size_t start = 0;
  bool header_seen = false;
  while (start < csv_text.size()) {
    size_t pos = csv_text.find('\n', start);
    if (pos == std::string_view::npos) pos = csv_text.size();
    std::string_view line = csv_text.substr(start, pos - start);
    start = pos + 1;
    ++line_no;
    if (line.empty() || line == "\r") continue;
    auto fields = split_csv_line(line);
    const std::string where = "gold line " + std::to_string(line_no);
    if (!header_seen) {
      header_seen = true;
      if (fields.size() == 4 && fields[0] == "doc_id" && fields[1] == "entity_type") {
        continue;
      }
      gold.warnings.push_back(where + ": missing header");
    }
    if (fields.size() != 4) {
      gold.warnings.push_back(where + ": expected 4 fields, record rejected");
      continue;
    }
    auto type = parse_entity_type(fields[1]);
    if (!type) {
      gold.warnings.push_back(where + ": unknown entity_type '" + fields[1] +
                              "', record rejected");
      continue;
    }
    if (fields[3] != "0" && fields[3] != "1") {
      gold.warnings.push_back(where + ": correct must be 0 or 1, record rejected");
      continue;
    }
    GoldLabel label;
    label.doc_id = fields[0];
    label.entity_type = *type;
    try {
      label.phrase = normalize_phrase_text(fields[2]);
    } catch (const InputError&) {
      gold.warnings.push_back(where + ": empty phrase, record rejected");
      continue;
    }
    label.correct = fields[3] == "1";
    gold.labels.push_back(std::move(label));
  }
  return gold;
}

GoldFile read_gold_labels(const std::filesystem::path& path) {
  return parse_gold_labels(read_file(path));
}

void write_gold_labels(const std::vector<GoldLabel>& labels, std::ostream& out) {
  out << "doc_id,entity_type,phrase,correct\n";
  for (const auto& l : labels) {
    const bool plain = l.doc_id.find_first_of(",\"") == std::string::npos;
    out << (plain ? l.doc_id : quote_csv(l.doc_id)) << ',' << entity_type_name(l.entity_type) << ',' << quote_csv(l.phrase)
        << ',' << (l.correct ? 1 : 0) << '\n';
  }
}

}  // namespace spo
