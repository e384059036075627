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

#include "spo/chaining.h"

#include <map>
#include <set>
#include <string>

namespace spo {
namespace {

TripleChain make_chain(const Triple& left, const Triple& right) {
  TripleChain chain;
  chain.left = left;
  chain.right = right;
  chain.derived.subject = left.subject;
  chain.derived.predicate = right.predicate;
  chain.derived.object = right.object;
  chain.derived.rules = {std::string(kChainRuleId)};
  chain.derived.origin = Origin::kChainDerived;
  chain.derived.doc_id = left.doc_id;
  chain.cyclic = left.subject.text == right.object.text;
  return chain;
}

// Joins pool[i] with pool[j] for i != j where at least one of them has
// index >= first_new.
std::vector<TripleChain> join(const std::vector<Triple>& pool, size_t first_new) {
  std::multimap<std::string, size_t> by_subject;
  for (size_t j = 0; j < pool.size(); ++j) by_subject.emplace(pool[j].subject.text, j);
  std::vector<TripleChain> out;
  for (size_t i = 0; i < pool.size(); ++i) {
    auto [lo, hi] = by_subject.equal_range(pool[i].object.text);
    for (auto it = lo; it != hi; ++it) {
      const size_t j = it->second;
      if (i == j) continue;
      if (i < first_new && j < first_new) continue;
      out.push_back(make_chain(pool[i], pool[j]));
    }
  }
  return out;
}

}  // namespace

std::vector<TripleChain> build_chains(const std::vector<Triple>& triples) {
  return join(triples, 0);
}

ChainClosure chain_closure(const std::vector<Triple>& triples, int max_depth) {
  ChainClosure result;
  std::vector<Triple> pool = triples;
  std::set<TripleKey> seen;
  for (const auto& t : pool) seen.insert(triple_key(t));

  size_t first_new = 0;
  for (int round = 0; round < max_depth; ++round) {
    auto chains = join(pool, first_new);
    if (chains.empty()) break;
    const size_t before = pool.size();
    for (auto& c : chains) {
      if (seen.insert(triple_key(c.derived)).second) {
        pool.push_back(c.derived);
        result.derived.push_back(c.derived);
      }
      result.chains.push_back(std::move(c));
    }
    if (pool.size() == before) break;
    first_new = before;
  }
  return result;
}

}  // namespace spo
