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

#ifndef SPO_TRIPLES_H_
#define SPO_TRIPLES_H_

#include <optional>
#include <string>
#include <vector>

#include "spo/model.h"
#include "spo/rules.h"

namespace spo {

// Phrase rooted at `head`: the head plus its modifier subtree (children
// reached through `modifier_deprels`, and a trailing possessive clitic),
// cut down to the contiguous run that contains the head. Throws
// InputError when the span is punctuation only.
Phrase build_slot_phrase(const Sentence& sentence, int head,
                         const std::vector<std::string>& modifier_deprels);

// Same, but returns nullopt instead of throwing.
std::optional<Phrase> try_build_slot_phrase(const Sentence& sentence, int head,
                                            const std::vector<std::string>& modifier_deprels);

// Phrase covering exactly tokens [begin, end] of `sentence`, headed by
// the first token whose governor lies outside the span.
std::optional<Phrase> phrase_from_span(const Sentence& sentence, int begin, int end);

// Surface text of tokens [begin, end], honoring SpaceAfter=No.
std::string join_surface(const Sentence& sentence, int begin, int end);

const std::vector<std::string>& effective_modifier_deprels(const RuleSet& rules);

// All injective bindings of rule.variables to token indices that satisfy
// every condition, in lexicographic order of the binding vector.
std::vector<std::vector<int>> match_rule(const Sentence& sentence, const TripleRule& rule,
                                         const RuleSet& rules);

// Applies every triple rule to every sentence, ordered by (sentence,
// rule id, subject token index). Duplicates are merged per occurrence
// only: equal text from two sentences stays as two triples.
std::vector<Triple> extract_triples(const Document& doc, const RuleSet& rules);

}  // namespace spo

#endif  // SPO_TRIPLES_H_
