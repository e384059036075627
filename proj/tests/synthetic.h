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

// Random inputs shared by the tests, the acceptance runner and the
// benchmark. Everything is a pure function of the Rng state.

#ifndef SPO_TESTS_SYNTHETIC_H_
#define SPO_TESTS_SYNTHETIC_H_

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "spo/model.h"
#include "spo/rules.h"

namespace spo::synth {

using Rng = std::mt19937_64;
using TextTriple = std::tuple<std::string, std::string, std::string>;

int uniform(Rng& rng, int lo, int hi);  // inclusive
bool chance(Rng& rng, double p);

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& v) {
  return v[static_cast<size_t>(uniform(rng, 0, static_cast<int>(v.size()) - 1))];
}

// Appends tokens in surface order; heads are wired afterwards.
class SentenceBuilder {
 public:
  int add(std::string form, std::string lemma, std::string upos, std::string xpos,
          std::string feats = "");
  void attach(int dep, int head, std::string deprel);
  void no_space_after(int index);
  int size() const { return static_cast<int>(sentence_.tokens.size()); }
  Sentence build(int sentence_index) const;

 private:
  Sentence sentence_;
};

// Random printable ASCII with spaces and punctuation.
std::string random_string(Rng& rng, int max_len);

// Valid tree of n tokens with random forms, tags and relations.
Sentence random_tree(Rng& rng, int n);

// Breaks one tree invariant of a valid sentence (n >= 2).
Sentence corrupt_tree(Rng& rng, Sentence sentence);

// Lexicons used by random rules: "verbs" and "preps".
std::vector<Lexicon> random_rule_lexicons();

// Random triple rule that validates without errors.
TripleRule random_triple_rule(Rng& rng, const std::string& id);

// Conjunction fixture: one sentence with coordinated subjects, predicates
// and objects, plus the expected expansion computed from its construction.
struct ConjFixture {
  Document doc;
  std::set<TextTriple> expected;
};

ConjFixture random_conj_fixture(Rng& rng, const std::string& doc_id);

// Template sentences in the style of program descriptions, with
// pronoun-subject sentences linked to their antecedent by coreference.
Document random_program_document(Rng& rng, const std::string& doc_id, int sentences);

std::vector<Document> random_corpus(uint64_t seed, int documents, int sentences_per_document);

}  // namespace spo::synth

#endif  // SPO_TESTS_SYNTHETIC_H_
