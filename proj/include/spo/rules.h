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

// Declarative extraction rules. A rule file holds lexicons, triple rules
// (dependency patterns that bind tokens to subject/predicate/object) and
// entity rules (conditions over a triple's slots that type one slot).
//
// File format, one directive per line, `#` starts a comment:
//
//   option modifier-deprels = amod compound det nmod:poss flat
//
//   lexicon offers
//     provides
//     offers
//   end
//
//   triple-rule RT-1
//     vars A B C
//     dep-exists(B, A, nsubj)
//     dep-exists(B, C, obj)
//     dep-absent(B, *, obl)
//     emit s=A p=B o=C
//   end
//
//   entity-rule s-35
//     slot s
//     type ProgramName
//     chain no
//     is-proper-noun(s)
//     lexicon-member(p, offers)
//   end
//
// Entity rule variables are the slots `s`, `p`, `o`; chain rules may also
// use `left.s` ... `right.o`, and `s`/`p`/`o` then denote the derived
// triple.

#ifndef SPO_RULES_H_
#define SPO_RULES_H_

#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "spo/model.h"

namespace spo {

class RuleError : public InputError {
 public:
  using InputError::InputError;
};

enum class ConditionKind {
  kDepExists,
  kDepAbsent,
  kPosIs,
  kLexiconMember,
  kSlotTextEquals,
  kIsProperNoun,
  kIsPluralNoun,
  kIsVbz,
};

std::string_view condition_kind_name(ConditionKind kind);

inline constexpr std::string_view kWildcard = "*";

// Argument layout per kind:
//   dep-exists / dep-absent: (governor, dependent, label); either variable
//                            may be `*` in triple rules
//   pos-is:                  (var, tag)
//   lexicon-member:          (var, lexicon)
//   slot-text-equals:        (var, text)
//   is-proper-noun, is-plural-noun, is-vbz: (var)
struct Condition {
  ConditionKind kind = ConditionKind::kDepExists;
  std::vector<std::string> args;

  bool operator==(const Condition&) const = default;
};

struct SlotAssignment {
  std::string subject;
  std::string predicate;
  std::string object;

  bool operator==(const SlotAssignment&) const = default;
};

struct TripleRule {
  std::string id;
  std::vector<std::string> variables;
  std::vector<Condition> conditions;
  SlotAssignment emit;

  bool operator==(const TripleRule&) const = default;
};

enum class Slot { kSubject, kPredicate, kObject };

char slot_letter(Slot slot);

struct EntityRule {
  std::string id;
  Slot slot = Slot::kObject;
  bool requires_chain = false;
  std::vector<Condition> conditions;
  EntityType target_type = EntityType::kNeedSatisfier;

  bool operator==(const EntityRule&) const = default;
};

struct Lexicon {
  std::string name;
  std::set<std::string> terms;  // lowercase

  // Case-insensitive exact match.
  bool contains(std::string_view word) const;
  bool operator==(const Lexicon&) const = default;
};

inline const std::vector<std::string>& default_modifier_deprels() {
  static const std::vector<std::string> kDeprels = {"amod", "compound", "det",
                                                    "nmod:poss", "flat"};
  return kDeprels;
}

struct RuleSet {
  std::vector<TripleRule> triple_rules;
  std::vector<EntityRule> entity_rules;
  std::vector<Lexicon> lexicons;
  // Empty means "use default_modifier_deprels()".
  std::vector<std::string> modifier_deprels;

  const Lexicon* lexicon(std::string_view name) const;
  const EntityRule* entity_rule(std::string_view id) const;
  bool operator==(const RuleSet&) const = default;
};

enum class Severity { kWarning, kError };

struct Diagnostic {
  Severity severity = Severity::kError;
  std::string rule_id;
  std::string message;
};

std::string format_diagnostic(const Diagnostic& d);

// Parses rule text. Syntax errors, duplicate rule ids and references to
// undeclared lexicons throw RuleError naming the line.
RuleSet parse_rules(std::string_view text);

std::vector<Diagnostic> validate_rule(const TripleRule& rule);
std::vector<Diagnostic> validate_rule(const EntityRule& rule);
std::vector<Diagnostic> validate_rules(const RuleSet& rules);

bool has_errors(const std::vector<Diagnostic>& diagnostics);

// parse_rules plus validation; any error-severity diagnostic throws.
RuleSet load_rules(const std::filesystem::path& path);

std::string serialize_rules(const RuleSet& rules);

// `label` without a subtype matches any relation with that base
// ("obl" matches "obl:tmod"); a subtyped label matches exactly.
bool deprel_matches(std::string_view deprel, std::string_view label);

// POS predicates. XPOS (Penn tags) decides when present, otherwise UPOS
// plus morphological features.
bool is_proper_noun(std::string_view upos, std::string_view xpos, const Features& feats);
bool is_plural_noun(std::string_view upos, std::string_view xpos, const Features& feats);
bool is_vbz(std::string_view upos, std::string_view xpos, const Features& feats);

}  // namespace spo

#endif  // SPO_RULES_H_
