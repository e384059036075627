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

#include <sstream>

#include "spo/ingest.h"
#include "synthetic.h"
#include "test_util.h"

namespace spo {
namespace {

TEST(Conllu, WorkedExampleWithCoref) {
  Corpus c = read_corpus(test::fixture("stmarys.conllu"), test::fixture("stmarys.coref.jsonl"));
  ASSERT_EQ(c.documents.size(), 1u);
  const Document& d = c.documents[0];
  EXPECT_EQ(d.doc_id, "stmarys");
  EXPECT_EQ(d.sentences.size(), 4u);
  ASSERT_EQ(d.coref_chains.size(), 1u);
  EXPECT_EQ(d.coref_chains[0].mentions.size(), 2u);
  EXPECT_EQ(d.coref_chains[0].representative, 0);
  EXPECT_TRUE(c.report.rejected_documents.empty());
  EXPECT_EQ(c.report.documents_read, 1);
  EXPECT_EQ(c.report.sentences_read, 4);
  // SpaceAfter=No and the trailing period survive parsing.
  EXPECT_FALSE(d.sentences[0].token(2).space_after);
  EXPECT_EQ(d.sentences[0].token(4).xpos, "VBZ");
  EXPECT_EQ(d.sentences[0].token(6).feats.at("Number"), "Plur");
}

TEST(Conllu, EmptyInput) {
  Corpus c = parse_conllu("", "x");
  EXPECT_TRUE(c.documents.empty());
  EXPECT_EQ(c.report.documents_read, 0);
}

TEST(Conllu, HeadOutOfRangeRejectsDocument) {
  Corpus c = read_corpus(test::fixture("malformed_head.conllu"), std::nullopt);
  EXPECT_TRUE(c.documents.empty());
  ASSERT_EQ(c.report.rejected_documents.size(), 1u);
  EXPECT_EQ(c.report.rejected_documents[0],
            (RejectedDocument{"bad1", "invalid dependency tree"}));
}

TEST(Conllu, MixedCorpusKeepsValidDocuments) {
  Corpus c = read_corpus(test::fixture("mixed.conllu"), std::nullopt);
  ASSERT_EQ(c.documents.size(), 2u);
  EXPECT_EQ(c.documents[0].doc_id, "good1");
  EXPECT_EQ(c.documents[1].doc_id, "good2");
  ASSERT_EQ(c.report.rejected_documents.size(), 2u);
  EXPECT_EQ(c.report.rejected_documents[0].doc_id, "corrupt");
  EXPECT_EQ(c.report.rejected_documents[1].doc_id, "truncated");
  EXPECT_NE(c.report.rejected_documents[1].reason.find("malformed line"), std::string::npos);
}

TEST(Conllu, SkipsRangesAndEmptyNodes) {
  const std::string text =
      "# newdoc id = mw\n"
      "1-2\tdon't\t_\t_\t_\t_\t_\t_\t_\t_\n"
      "1\tdo\tdo\tAUX\tVBP\t_\t3\taux\t_\t_\n"
      "2\tn't\tnot\tPART\tRB\t_\t3\tadvmod\t_\t_\n"
      "2.1\tx\tx\tX\t_\t_\t_\t_\t_\t_\n"
      "3\tgo\tgo\tVERB\tVB\t_\t0\troot\t_\t_\n"
      "\n";
  Corpus c = parse_conllu(text, "x");
  ASSERT_EQ(c.documents.size(), 1u);
  EXPECT_EQ(c.documents[0].sentences[0].size(), 3);
}

TEST(Conllu, DefaultDocIdAndDuplicates) {
  const std::string sentence = "1\tgo\tgo\tVERB\tVB\t_\t0\troot\t_\t_\n\n";
  Corpus c = parse_conllu(sentence + "# newdoc id = a\n" + sentence + "# newdoc id = a\n" + sentence,
                          "stem");
  ASSERT_EQ(c.documents.size(), 2u);
  EXPECT_EQ(c.documents[0].doc_id, "stem");
  EXPECT_EQ(c.documents[1].doc_id, "a");
  ASSERT_EQ(c.report.rejected_documents.size(), 1u);
  EXPECT_EQ(c.report.rejected_documents[0].reason, "duplicate doc_id");
}

TEST(Conllu, WriteReadRoundTrip) {
  auto docs = synth::random_corpus(3, 20, 5);
  std::ostringstream conllu, coref;
  write_conllu(docs, conllu);
  write_coref_sidecar(docs, coref);
  Corpus c = parse_conllu(conllu.str(), "x");
  attach_coref(coref.str(), c.documents, c.report);
  EXPECT_TRUE(c.report.rejected_documents.empty());
  EXPECT_TRUE(c.report.warnings.empty());
  EXPECT_EQ(c.documents, docs);
}

TEST(Coref, BadSpansAndShortChainsAreDropped) {
  Document d = test::parse_document("1\tgo\tgo\tVERB\tVB\t_\t0\troot\t_\t_\n\n", "a");
  std::vector<Document> docs = {d};
  IngestReport report;
  attach_coref(
      "{\"doc_id\":\"a\",\"chains\":[[{\"sentence\":0,\"start\":1,\"end\":1},"
      "{\"sentence\":3,\"start\":1,\"end\":1}],[{\"sentence\":0,\"start\":1,\"end\":1}]]}\n"
      "{\"doc_id\":\"zzz\",\"chains\":[]}\n",
      docs, report);
  EXPECT_TRUE(docs[0].coref_chains.empty());
  ASSERT_EQ(report.warnings.size(), 3u);
  EXPECT_NE(report.warnings[0].find("span out of range"), std::string::npos);
  EXPECT_NE(report.warnings[1].find("fewer than 2 mentions"), std::string::npos);
}

TEST(Coref, PronominalRepresentativeIsReplaced) {
  Corpus c = read_corpus(test::fixture("stmarys.conllu"), std::nullopt);
  std::vector<Document> docs = c.documents;
  attach_coref(
      "{\"doc_id\":\"stmarys\",\"chains\":[[{\"sentence\":0,\"start\":1,\"end\":3},"
      "{\"sentence\":1,\"start\":1,\"end\":1}]],\"representative\":[1]}\n",
      docs, c.report);
  ASSERT_EQ(docs[0].coref_chains.size(), 1u);
  EXPECT_EQ(docs[0].coref_chains[0].representative, 0);
}

TEST(Gold, ParsesOneLine) {
  GoldFile g = parse_gold_labels(
      "doc_id,entity_type,phrase,correct\ndoc7,NeedSatisfier,\"education services\",1\n");
  ASSERT_EQ(g.labels.size(), 1u);
  EXPECT_EQ(g.labels[0].doc_id, "doc7");
  EXPECT_EQ(g.labels[0].entity_type, EntityType::kNeedSatisfier);
  EXPECT_EQ(g.labels[0].phrase, "education services");
  EXPECT_TRUE(g.labels[0].correct);
}

TEST(Gold, UnknownTypeRejected) {
  GoldFile g = parse_gold_labels("doc_id,entity_type,phrase,correct\ndoc7,Banana,x,1\n");
  EXPECT_TRUE(g.labels.empty());
  ASSERT_EQ(g.warnings.size(), 1u);
  EXPECT_NE(g.warnings[0].find("Banana"), std::string::npos);
}

TEST(Gold, RandomRoundTrip) {
  synth::Rng rng(5);
  std::vector<GoldLabel> labels;
  while (labels.size() < 100) {
    std::string phrase = synth::random_string(rng, 20);
    if (!std::any_of(phrase.begin(), phrase.end(), [](unsigned char c) { return std::isalnum(c); })) {
      continue;
    }
    GoldLabel g;
    g.doc_id = "doc" + std::to_string(synth::uniform(rng, 0, 50)) + (synth::chance(rng, 0.1) ? ",x" : "");
    g.entity_type = synth::pick(rng, all_entity_types());
    g.phrase = normalize_phrase_text(phrase);
    g.correct = synth::chance(rng, 0.5);
    labels.push_back(g);
  }
  std::ostringstream out;
  write_gold_labels(labels, out);
  GoldFile back = parse_gold_labels(out.str());
  EXPECT_TRUE(back.warnings.empty());
  EXPECT_EQ(back.labels, labels);
}

TEST(Gold, FixtureFile) {
  GoldFile g = read_gold_labels(test::fixture("gold.csv"));
  EXPECT_EQ(g.labels.size(), 4u);
  EXPECT_EQ(g.labels[0].phrase, "st. mary's");
}

TEST(ReadFile, MissingFileThrows) {
  EXPECT_THROW(read_file("/nonexistent/file.conllu"), InputError);
}

}  // namespace
}  // namespace spo
