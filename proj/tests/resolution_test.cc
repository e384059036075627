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

#include <gtest/gtest.h>

#include "spo/resolution.h"
#include "spo/triples.h"
#include "synthetic.h"
#include "test_util.h"

namespace spo {
namespace {

using synth::SentenceBuilder;
using synth::TextTriple;

RuleSet rt1_only() {
  RuleSet r = test::default_rules();
  std::erase_if(r.triple_rules, [](const TripleRule& t) { return t.id != "RT-1"; });
  return r;
}

std::vector<Triple> expand(const Document& d, const RuleSet& rules) {
  auto t = extract_triples(d, rules);
  t = resolve_coreferences(t, d);
  return expand_conjunctions(t, d, effective_modifier_deprels(rules));
}

Document worked_example() {
  return read_corpus(test::fixture("stmarys.conllu"), test::fixture("stmarys.coref.jsonl"))
      .documents[0];
}

TEST(Coref, PronounSubjectTakesRepresentative) {
  Document d = worked_example();
  d.sentences.resize(2);
  auto resolved = resolve_coreferences(extract_triples(d, rt1_only()), d);
  EXPECT_EQ(test::texts(resolved),
            (std::set<TextTriple>{{"st. mary's", "provides", "education services"},
                                  {"st. mary's", "prepare", "hot meals"}}));
  for (const auto& t : resolved) {
    if (t.predicate.text == "prepare") EXPECT_EQ(t.origin, Origin::kCorefExpanded);
  }
}

TEST(Coref, NoChainsIsIdentity) {
  Document d = worked_example();
  d.coref_chains.clear();
  auto triples = extract_triples(d, rt1_only());
  EXPECT_EQ(resolve_coreferences(triples, d), triples);
}

TEST(Coref, ThreeMentionChain) {
  Document d;
  d.doc_id = "three";
  {
    SentenceBuilder b;
    const int hope = b.add("Hope", "Hope", "PROPN", "NNP");
    const int house = b.add("House", "House", "PROPN", "NNP");
    const int v = b.add("offers", "offer", "VERB", "VBZ");
    const int o = b.add("meals", "meal", "NOUN", "NNS");
    b.attach(hope, house, "compound");
    b.attach(house, v, "nsubj");
    b.attach(v, 0, "root");
    b.attach(o, v, "obj");
    d.sentences.push_back(b.build(0));
  }
  {
    SentenceBuilder b;
    const int it = b.add("It", "it", "PRON", "PRP");
    const int v = b.add("serves", "serve", "VERB", "VBZ");
    const int o = b.add("seniors", "senior", "NOUN", "NNS");
    b.attach(it, v, "nsubj");
    b.attach(v, 0, "root");
    b.attach(o, v, "obj");
    d.sentences.push_back(b.build(1));
  }
  {
    SentenceBuilder b;
    const int det = b.add("The", "the", "DET", "DT");
    const int n = b.add("shelter", "shelter", "NOUN", "NN");
    const int v = b.add("runs", "run", "VERB", "VBZ");
    const int o = b.add("classes", "class", "NOUN", "NNS");
    b.attach(det, n, "det");
    b.attach(n, v, "nsubj");
    b.attach(v, 0, "root");
    b.attach(o, v, "obj");
    d.sentences.push_back(b.build(2));
  }
  d.coref_chains.push_back(CorefChain{{{0, 1, 2}, {1, 1, 1}, {2, 1, 2}}, 0});

  auto out = resolve_coreferences(extract_triples(d, rt1_only()), d);
  std::set<std::string> predicates_with_rep;
  for (const auto& t : out) {
    EXPECT_NE(t.subject.text, "it");
    if (t.subject.text == "hope house") predicates_with_rep.insert(t.predicate.text);
  }
  EXPECT_EQ(predicates_with_rep, (std::set<std::string>{"offers", "serves", "runs"}));
  // Non-pronominal mentions keep their own reading alongside.
  EXPECT_TRUE(test::texts(out).count({"the shelter", "runs", "classes"}));
  EXPECT_EQ(out.size(), 4u);
}

TEST(Conjunction, SoupKitchenObjects) {
  SentenceBuilder b;
  const int st = b.add("St.", "St.", "PROPN", "NNP");
  const int mary = b.add("Mary", "Mary", "PROPN", "NNP");
  const int s = b.add("'s", "'s", "PART", "POS");
  const int v = b.add("provides", "provide", "VERB", "VBZ");
  const int edu = b.add("education", "education", "NOUN", "NN");
  const int services = b.add("services", "service", "NOUN", "NNS");
  const int c1 = b.add(",", ",", "PUNCT", ",");
  const int a = b.add("a", "a", "DET", "DT");
  const int soup = b.add("soup", "soup", "NOUN", "NN");
  const int kitchen = b.add("kitchen", "kitchen", "NOUN", "NN");
  const int c2 = b.add(",", ",", "PUNCT", ",");
  const int and_ = b.add("and", "and", "CCONJ", "CC");
  const int religious = b.add("religious", "religious", "ADJ", "JJ");
  const int counselling = b.add("counselling", "counselling", "NOUN", "NN");
  const int dot = b.add(".", ".", "PUNCT", ".");
  b.no_space_after(mary);
  b.no_space_after(services);
  b.no_space_after(kitchen);
  b.no_space_after(counselling);
  b.attach(st, mary, "compound");
  b.attach(mary, v, "nsubj");
  b.attach(s, mary, "case");
  b.attach(v, 0, "root");
  b.attach(edu, services, "compound");
  b.attach(services, v, "obj");
  b.attach(c1, kitchen, "punct");
  b.attach(a, kitchen, "det");
  b.attach(soup, kitchen, "compound");
  b.attach(kitchen, services, "conj");
  b.attach(c2, counselling, "punct");
  b.attach(and_, counselling, "cc");
  b.attach(religious, counselling, "amod");
  b.attach(counselling, services, "conj");
  b.attach(dot, v, "punct");
  Document d;
  d.doc_id = "soup";
  d.sentences.push_back(b.build(0));

  EXPECT_EQ(test::texts(expand(d, rt1_only())),
            (std::set<TextTriple>{{"st. mary's", "provides", "education services"},
                                  {"st. mary's", "provides", "a soup kitchen"},
                                  {"st. mary's", "provides", "religious counselling"}}));
}

TEST(Conjunction, PredicatesWithOwnObjects) {
  Document d = worked_example();
  Document one;
  one.doc_id = d.doc_id;
  one.sentences = {d.sentences[3]};
  one.sentences[0].sentence_index = 0;
  auto out = expand(one, rt1_only());
  EXPECT_EQ(test::texts(out),
            (std::set<TextTriple>{{"st. mary's", "provides", "education services"},
                                  {"st. mary's", "prepares", "hot meals"}}));
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[1].origin, Origin::kConjunctionExpanded);
}

TEST(Conjunction, NoConjIsIdentity) {
  Document d = worked_example();
  d.sentences.resize(1);
  auto triples = extract_triples(d, rt1_only());
  EXPECT_EQ(expand_conjunctions(triples, d, default_modifier_deprels()), triples);
}

TEST(Conjunction, TwoSubjectsThreeObjects) {
  SentenceBuilder b;
  const int s1 = b.add("Tenants", "tenant", "NOUN", "NNS");
  const int and1 = b.add("and", "and", "CCONJ", "CC");
  const int s2 = b.add("families", "family", "NOUN", "NNS");
  const int v = b.add("need", "need", "VERB", "VBP");
  const int o1 = b.add("beds", "bed", "NOUN", "NNS");
  const int o2 = b.add("coats", "coat", "NOUN", "NNS");
  const int and2 = b.add("and", "and", "CCONJ", "CC");
  const int o3 = b.add("meals", "meal", "NOUN", "NNS");
  b.attach(s1, v, "nsubj");
  b.attach(and1, s2, "cc");
  b.attach(s2, s1, "conj");
  b.attach(v, 0, "root");
  b.attach(o1, v, "obj");
  b.attach(o2, o1, "conj");
  b.attach(and2, o3, "cc");
  b.attach(o3, o1, "conj");
  Document d;
  d.doc_id = "x";
  d.sentences.push_back(b.build(0));
  auto out = expand(d, rt1_only());
  EXPECT_EQ(out.size(), 6u);
  std::set<TextTriple> want;
  for (const char* s : {"tenants", "families"}) {
    for (const char* o : {"beds", "coats", "meals"}) want.emplace(s, "need", o);
  }
  EXPECT_EQ(test::texts(out), want);
}

TEST(Conjunction, ConjunctSetIsUndirectedComponent) {
  SentenceBuilder b;
  const int a = b.add("a", "a", "NOUN", "NN");
  const int c = b.add("c", "c", "NOUN", "NN");
  const int d = b.add("d", "d", "NOUN", "NN");
  const int root = b.add("v", "v", "VERB", "VB");
  b.attach(a, root, "obj");
  b.attach(c, a, "conj");
  b.attach(d, c, "conj");
  b.attach(root, 0, "root");
  const Sentence s = b.build(0);
  EXPECT_EQ(conjunct_set(s, d), (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(conjunct_set(s, root), (std::vector<int>{4}));
}

TEST(Conjunction, RandomFixturesMatchConstructionOracle) {
  synth::Rng rng(303);
  const RuleSet rules = rt1_only();
  for (int i = 0; i < 300; ++i) {
    auto fx = synth::random_conj_fixture(rng, "c" + std::to_string(i));
    ASSERT_FALSE(check_sentence(fx.doc.sentences[0]).has_value());
    auto got = expand(fx.doc, rules);
    EXPECT_EQ(test::texts(got), fx.expected) << "fixture " << i;
    EXPECT_EQ(got.size(), fx.expected.size());
  }
}

}  // namespace
}  // namespace spo
