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

#ifndef SPO_CHAINING_H_
#define SPO_CHAINING_H_

#include <vector>

#include "spo/model.h"

namespace spo {

inline constexpr int kDefaultChainDepth = 4;

// One round: every ordered pair (t1, t2), t1 != t2, whose t1.object text
// equals t2.subject text.
std::vector<TripleChain> build_chains(const std::vector<Triple>& triples);

struct ChainClosure {
  std::vector<TripleChain> chains;
  // Derived triples whose key is not among the inputs, in discovery order.
  std::vector<Triple> derived;
};

// Repeats build_chains over inputs plus newly derived triples for up to
// `max_depth` rounds, or until no new derived triple appears. Each round
// only joins pairs that involve a triple derived in the previous round.
ChainClosure chain_closure(const std::vector<Triple>& triples, int max_depth = kDefaultChainDepth);

}  // namespace spo

#endif  // SPO_CHAINING_H_
