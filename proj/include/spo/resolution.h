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

// Expansion of extracted triples across coreference chains and
// coordinated (conj-linked) slot heads.

#ifndef SPO_RESOLUTION_H_
#define SPO_RESOLUTION_H_

#include <string>
#include <vector>

#include "spo/model.h"

namespace spo {

// For each slot overlapping a coreference mention, emits a copy with the
// slot replaced by the chain's representative phrase. Pronoun-headed
// slots are replaced; other slots keep the original alongside.
std::vector<Triple> resolve_coreferences(const std::vector<Triple>& triples,
                                         const Document& doc);

// Tokens reachable from `head` over conj edges in either direction,
// including `head`, in ascending order.
std::vector<int> conjunct_set(const Sentence& sentence, int head);

// Cartesian expansion of subject, predicate and object conjuncts. A
// conjunct predicate that has its own dependent in the relation the
// original slot held is paired with that dependent's conjuncts instead.
std::vector<Triple> expand_conjunctions(const std::vector<Triple>& triples,
                                        const Document& doc,
                                        const std::vector<std::string>& modifier_deprels);

}  // namespace spo

#endif  // SPO_RESOLUTION_H_
