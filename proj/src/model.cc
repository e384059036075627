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

#include "spo/model.h"

#include <algorithm>
#include <cctype>

namespace spo {
namespace {

bool is_space(unsigned char c) { return std::isspace(c) != 0; }

// Only ASCII punctuation is stripped; UTF-8 continuation bytes are left
// alone.
bool is_trim_char(unsigned char c) {
  return c < 0x80 && (std::isspace(c) || std::ispunct(c));
}

}  // namespace

std::optional<std::string> check_sentence(const Sentence& sentence) {
  const int n = sentence.size();
  if (n == 0) return "empty sentence";
  int roots = 0;
  for (int i = 0; i < n; ++i) {
    const Token& tok = sentence.tokens[i];
    if (tok.index != i + 1) return "token ids are not consecutive";
    if (tok.head < 0 || tok.head > n) return "head out of range";
    if (tok.head == tok.index) return "token is its own head";
    if (tok.head > 0 && tok.deprel.empty()) return "missing deprel";
    if (tok.head == 0) ++roots;
  }
  if (roots != 1) return "sentence must have exactly one root";
  // Walk up from every token; a path longer than n means a cycle.
  for (int i = 1; i <= n; ++i) {
    int cur = i;
    int steps = 0;
    while (cur != 0) {
      cur = sentence.token(cur).head;
      if (++steps > n) return "dependency cycle";
    }
  }
  return std::nullopt;
}

std::string_view origin_name(Origin origin) {
  switch (origin) {
    case Origin::kDirect: return "direct";
    case Origin::kCorefExpanded: return "coref-expanded";
    case Origin::kConjunctionExpanded: return "conjunction-expanded";
    case Origin::kChainDerived: return "chain-derived";
  }
  return "direct";
}

TripleKey triple_key(const Triple& triple) {
  return {triple.subject.text, triple.predicate.text, triple.object.text,
          triple.doc_id};
}

void TripleSet::add(Triple triple) {
  std::pair<TripleKey, HeadKey> key{triple_key(triple), HeadKey{}};
  if (identity_ == Identity::kOccurrence) {
    key.second = {triple.subject.head, triple.predicate.head, triple.object.head};
  }
  auto it = index_.find(key);
  if (it == index_.end()) {
    index_.emplace(std::move(key), triples_.size());
    triples_.push_back(std::move(triple));
    return;
  }
  auto& rules = triples_[it->second].rules;
  for (auto& rule : triple.rules) {
    if (std::find(rules.begin(), rules.end(), rule) == rules.end()) {
      rules.push_back(std::move(rule));
    }
  }
}

void TripleSet::add_all(std::vector<Triple> triples) {
  for (auto& t : triples) add(std::move(t));
}

bool TripleSet::contains(const Triple& triple) const {
  std::pair<TripleKey, HeadKey> key{triple_key(triple), HeadKey{}};
  if (identity_ == Identity::kOccurrence) {
    key.second = {triple.subject.head, triple.predicate.head, triple.object.head};
  }
  return index_.count(key) > 0;
}

const std::vector<EntityType>& all_entity_types() {
  static const std::vector<EntityType> kTypes = {
      EntityType::kProgramName,        EntityType::kNeedSatisfier,
      EntityType::kClientCharacteristic, EntityType::kNeed,
      EntityType::kDesiredState,       EntityType::kServiceDescription,
      EntityType::kClientDescription,  EntityType::kNeedSatisfierDescription,
      EntityType::kRequiredCriteria,
  };
  return kTypes;
}

std::string_view entity_type_name(EntityType type) {
  switch (type) {
    case EntityType::kProgramName: return "ProgramName";
    case EntityType::kNeedSatisfier: return "NeedSatisfier";
    case EntityType::kClientCharacteristic: return "ClientCharacteristic";
    case EntityType::kNeed: return "Need";
    case EntityType::kDesiredState: return "DesiredState";
    case EntityType::kServiceDescription: return "ServiceDescription";
    case EntityType::kClientDescription: return "ClientDescription";
    case EntityType::kNeedSatisfierDescription: return "NeedSatisfierDescription";
    case EntityType::kRequiredCriteria: return "RequiredCriteria";
  }
  return "ProgramName";
}

std::optional<EntityType> parse_entity_type(std::string_view name) {
  for (EntityType t : all_entity_types()) {
    if (entity_type_name(t) == name) return t;
  }
  return std::nullopt;
}

std::string_view relation_name(Relation relation) {
  switch (relation) {
    case Relation::kOffers: return "offers";
    case Relation::kDelivers: return "delivers";
    case Relation::kSatisfies: return "satisfies";
    case Relation::kEligibleFor: return "eligibleFor";
    case Relation::kRequires: return "requires";
  }
  return "offers";
}

std::optional<Relation> relation_for(EntityType from, EntityType to) {
  using E = EntityType;
  if (from == E::kProgramName &&
      (to == E::kServiceDescription || to == E::kNeedSatisfier)) {
    return Relation::kOffers;
  }
  if (from == E::kServiceDescription && to == E::kNeedSatisfier) {
    return Relation::kDelivers;
  }
  if (from == E::kNeedSatisfier && to == E::kNeed) return Relation::kSatisfies;
  if (from == E::kServiceDescription && to == E::kClientCharacteristic) {
    return Relation::kEligibleFor;
  }
  if (from == E::kServiceDescription && to == E::kRequiredCriteria) {
    return Relation::kRequires;
  }
  return std::nullopt;
}

std::string normalize_phrase_text(std::string_view raw) {
  size_t begin = 0;
  size_t end = raw.size();
  while (begin < end && is_trim_char(raw[begin])) ++begin;
  while (end > begin && is_trim_char(raw[end - 1])) --end;
  if (begin == end) throw InputError("empty phrase");

  std::string out;
  out.reserve(end - begin);
  bool pending_space = false;
  for (size_t i = begin; i < end; ++i) {
    const unsigned char c = raw[i];
    if (is_space(c)) {
      pending_space = true;
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back(c < 0x80 ? static_cast<char>(std::tolower(c)) : raw[i]);
  }
  return out;
}

bool rule_id_less(std::string_view a, std::string_view b) {
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const bool da = std::isdigit(static_cast<unsigned char>(a[i])) != 0;
    const bool db = std::isdigit(static_cast<unsigned char>(b[j])) != 0;
    if (da && db) {
      size_t ie = i, je = j;
      while (ie < a.size() && std::isdigit(static_cast<unsigned char>(a[ie]))) ++ie;
      while (je < b.size() && std::isdigit(static_cast<unsigned char>(b[je]))) ++je;
      // Compare numerically without overflow: strip zeros, then length.
      size_t is = i, js = j;
      while (is + 1 < ie && a[is] == '0') ++is;
      while (js + 1 < je && b[js] == '0') ++js;
      const auto na = a.substr(is, ie - is);
      const auto nb = b.substr(js, je - js);
      if (na.size() != nb.size()) return na.size() < nb.size();
      if (na != nb) return na < nb;
      i = ie;
      j = je;
      continue;
    }
    if (a[i] != b[j]) return a[i] < b[j];
    ++i;
    ++j;
  }
  if (a.size() - i != b.size() - j) return a.size() - i < b.size() - j;
  return a < b;
}

}  // namespace spo
