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

#ifndef SPO_ENTITIES_H_
#define SPO_ENTITIES_H_

#include <vector>

#include "spo/model.h"
#include "spo/rules.h"

namespace spo {

// Slot phrases an entity rule is evaluated against. Chain context is
// present only when matching chain rules.
struct SlotContext {
  const Triple* triple = nullptr;
  const Triple* left = nullptr;
  const Triple* right = nullptr;
};

bool entity_rule_matches(const EntityRule& rule, const SlotContext& ctx, const RuleSet& rules);

// Applies non-chain rules to `triples` and chain rules to `chains`
// (their derived triple plus left/right context). Mentions with the same
// type and text are merged and their fired rules unioned.
std::vector<EntityMention> extract_entities(const std::vector<Triple>& triples,
                                            const std::vector<TripleChain>& chains,
                                            const RuleSet& rules);

// One edge per triple whose subject and object both carry mentions whose
// types form a relation schema.
std::vector<SemanticEdge> derive_semantic_edges(const std::vector<EntityMention>& mentions,
                                                const std::vector<Triple>& triples);

}  // namespace spo

#endif  // SPO_ENTITIES_H_
