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

// Shared domain types: dependency-annotated documents, slot phrases,
// triples, triple chains, typed entity mentions and semantic edges.
// Everything here is a plain value type; none of it does I/O.

#ifndef SPO_MODEL_H_
#define SPO_MODEL_H_

#include <compare>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace spo {

// Thrown for malformed input (files, rule text, gold data).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown when an internal invariant does not hold.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

using Features = std::map<std::string, std::string>;

struct Token {
  int index = 0;  // 1-based within the sentence
  std::string form;
  std::string lemma;
  std::string upos;
  std::string xpos;  // empty when the column is "_"
  Features feats;
  int head = 0;  // 0 = root
  std::string deprel;
  bool space_after = true;

  bool operator==(const Token&) const = default;
};

struct Sentence {
  std::vector<Token> tokens;
  int sentence_index = 0;

  // Tokens are stored in index order, so token(i) is tokens[i - 1].
  const Token& token(int index) const { return tokens.at(index - 1); }
  int size() const { return static_cast<int>(tokens.size()); }

  bool operator==(const Sentence&) const = default;
};

// Returns a description of the first violated tree invariant, or nullopt
// when the sentence is a well-formed single-rooted dependency tree.
std::optional<std::string> check_sentence(const Sentence& sentence);

struct MentionSpan {
  int sentence = 0;
  int start = 0;  // 1-based, inclusive
  int end = 0;    // 1-based, inclusive

  bool operator==(const MentionSpan&) const = default;
};

struct CorefChain {
  std::vector<MentionSpan> mentions;
  int representative = 0;  // index into mentions

  const MentionSpan& representative_mention() const {
    return mentions.at(representative);
  }
  bool operator==(const CorefChain&) const = default;
};

struct Document {
  std::string doc_id;
  std::vector<Sentence> sentences;
  std::vector<CorefChain> coref_chains;

  bool operator==(const Document&) const = default;
};

struct TokenRef {
  int sentence = 0;
  int token = 0;

  auto operator<=>(const TokenRef&) const = default;
};

// Morphosyntactic properties of a phrase's head token, copied so that
// entity rules can be evaluated without the source document.
struct HeadInfo {
  std::string lemma;
  std::string upos;
  std::string xpos;
  Features feats;
  std::string deprel;
  int governor = 0;

  bool operator==(const HeadInfo&) const = default;
};

struct Phrase {
  std::string text;  // normalized
  TokenRef head;
  int span_begin = 0;  // token indices in head.sentence, inclusive
  int span_end = 0;
  HeadInfo head_info;

  bool operator==(const Phrase&) const = default;
};

enum class Origin { kDirect, kCorefExpanded, kConjunctionExpanded, kChainDerived };

std::string_view origin_name(Origin origin);

struct Triple {
  Phrase subject;
  Phrase predicate;
  Phrase object;
  // Rules that produced this triple; the first is the source rule, the
  // rest were merged in by deduplication.
  std::vector<std::string> rules;
  Origin origin = Origin::kDirect;
  std::string doc_id;

  const std::string& source_rule() const { return rules.front(); }
  bool operator==(const Triple&) const = default;
};

// Deduplication identity of a triple.
using TripleKey = std::tuple<std::string, std::string, std::string, std::string>;
TripleKey triple_key(const Triple& triple);

// Appends `triple` unless an equal-keyed triple is already present, in
// which case its rules are merged into the existing one. With
// kOccurrence, triples with equal text but different head tokens stay
// separate (needed until conjunction expansion has seen every sentence).
class TripleSet {
 public:
  enum class Identity { kText, kOccurrence };

  explicit TripleSet(Identity identity = Identity::kText) : identity_(identity) {}

  void add(Triple triple);
  void add_all(std::vector<Triple> triples);
  bool contains(const Triple& triple) const;
  const std::vector<Triple>& triples() const { return triples_; }
  std::vector<Triple> release() { return std::move(triples_); }

 private:
  using HeadKey = std::tuple<TokenRef, TokenRef, TokenRef>;

  Identity identity_;
  std::vector<Triple> triples_;
  std::map<std::pair<TripleKey, HeadKey>, size_t> index_;
};

// Identifier carried by triples synthesized through chaining.
inline constexpr std::string_view kChainRuleId = "TC-1";

struct TripleChain {
  Triple left;
  Triple right;
  Triple derived;
  // left.subject and right.object normalize to the same text.
  bool cyclic = false;

  bool operator==(const TripleChain&) const = default;
};

enum class EntityType {
  kProgramName,
  kNeedSatisfier,
  kClientCharacteristic,
  kNeed,
  kDesiredState,
  kServiceDescription,
  kClientDescription,
  kNeedSatisfierDescription,
  kRequiredCriteria,
};

inline constexpr int kNumEntityTypes = 9;

const std::vector<EntityType>& all_entity_types();
std::string_view entity_type_name(EntityType type);
std::optional<EntityType> parse_entity_type(std::string_view name);

struct EntityMention {
  EntityType entity_type = EntityType::kProgramName;
  Phrase phrase;
  std::string doc_id;
  std::vector<std::string> fired_rules;
  std::optional<double> score;

  bool operator==(const EntityMention&) const = default;
};

enum class Relation { kOffers, kDelivers, kSatisfies, kEligibleFor, kRequires };

std::string_view relation_name(Relation relation);

// Returns the relation linking a source of type `from` to a target of
// type `to`, if the pair matches one of the five relation schemas.
std::optional<Relation> relation_for(EntityType from, EntityType to);

struct SemanticEdge {
  Relation relation = Relation::kOffers;
  EntityMention source;
  EntityMention target;
  std::string doc_id;

  bool operator==(const SemanticEdge&) const = default;
};

// Lowercases, strips leading and trailing whitespace and punctuation and
// collapses internal whitespace runs. Throws InputError("empty phrase")
// when nothing remains.
std::string normalize_phrase_text(std::string_view raw);

// Natural ordering of rule ids: "RT-2" < "RT-10", "o-9" < "o-47".
bool rule_id_less(std::string_view a, std::string_view b);

}  // namespace spo

#endif  // SPO_MODEL_H_
