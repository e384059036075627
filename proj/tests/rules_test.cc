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

#include "spo/rules.h"
#include "synthetic.h"
#include "test_util.h"

namespace spo {
namespace {

size_t count(const std::vector<Diagnostic>& ds, Severity s) {
  return std::count_if(ds.begin(), ds.end(), [&](const Diagnostic& d) { return d.severity == s; });
}

TEST(RuleFile, DefaultOffersLexicon) {
  const RuleSet& rules = test::default_rules();
  const Lexicon* offers = rules.lexicon("offers");
  ASSERT_NE(offers, nullptr);
  EXPECT_EQ(offers->terms, (std::set<std::string>{"provides", "offers", "offer", "provide",
                                                  "provided", "offered", "offering"}));
  EXPECT_TRUE(offers->contains("Provides"));
  EXPECT_FALSE(offers->contains("prepares"));
}

TEST(RuleFile, DefaultValidatesClean) {
  EXPECT_TRUE(validate_rules(test::default_rules()).empty());
}

TEST(RuleFile, EmptyFile) {
  RuleSet r = parse_rules("");
  EXPECT_TRUE(r.triple_rules.empty());
  EXPECT_TRUE(r.entity_rules.empty());
  EXPECT_TRUE(r.lexicons.empty());
  EXPECT_TRUE(parse_rules("# only a comment\n\n").triple_rules.empty());
}

TEST(RuleFile, MissingLexiconIsFatal) {
  try {
    load_rules(test::fixture("missing_lexicon.rules"));
    FAIL() << "expected RuleError";
  } catch (const RuleError& e) {
    EXPECT_NE(std::string(e.what()).find("'missing'"), std::string::npos) << e.what();
  }
}

TEST(RuleFile, DuplicateIdIsFatal) {
  EXPECT_THROW(load_rules(test::fixture("duplicate_id.rules")), RuleError);
}

TEST(RuleFile, SyntaxErrors) {
  EXPECT_THROW(parse_rules("triple-rule RT-1\n  vars A B C\n"), RuleError);  // no end
  EXPECT_THROW(parse_rules("bogus directive\n"), RuleError);
  EXPECT_THROW(parse_rules("triple-rule RT-1\n  vars A B C\n  dep-exists(A, B)\nend\n"), RuleError);
  EXPECT_THROW(parse_rules("lexicon x\nend\n"), RuleError);
  EXPECT_THROW(parse_rules("entity-rule o-1\n  type Need\nend\n"), RuleError);
  EXPECT_THROW(parse_rules("entity-rule o-1\n  slot o\n  type Banana\nend\n"), RuleError);
}

TEST(Validate, Rt1IsClean) {
  const RuleSet& rules = test::default_rules();
  const TripleRule* rt1 = nullptr;
  for (const auto& r : rules.triple_rules) {
    if (r.id == "RT-1") rt1 = &r;
  }
  ASSERT_NE(rt1, nullptr);
  EXPECT_TRUE(validate_rule(*rt1).empty());
}

TEST(Validate, UnboundEmitVariable) {
  RuleSet r = parse_rules(read_file(test::fixture("unbound_emit.rules")));
  auto ds = validate_rules(r);
  ASSERT_EQ(ds.size(), 1u);
  EXPECT_EQ(ds[0].severity, Severity::kError);
  EXPECT_EQ(ds[0].rule_id, "RT-9");
  EXPECT_NE(format_diagnostic(ds[0]).find("RT-9"), std::string::npos);
}

TEST(Validate, ContradictionWarns) {
  RuleSet r = parse_rules(
      "triple-rule RT-1\n  vars A B C\n  dep-exists(A, B, nsubj)\n  dep-absent(A, B, nsubj)\n"
      "  dep-exists(A, C, obj)\n  emit s=B p=A o=C\nend\n");
  auto ds = validate_rules(r);
  EXPECT_EQ(count(ds, Severity::kError), 0u);
  ASSERT_EQ(count(ds, Severity::kWarning), 1u);
  EXPECT_NE(ds[0].message.find("contradictory"), std::string::npos);
}

TEST(Validate, EntityRuleChecks) {
  auto diags = [](const std::string& text) { return validate_rules(parse_rules(text)); };
  // Slot prefix must match the slot.
  EXPECT_EQ(count(diags("entity-rule s-1\n  slot o\n  type Need\n  chain no\n  is-plural-noun(o)\nend\n"),
                  Severity::kError), 1u);
  // left./right. require a chain rule.
  EXPECT_EQ(count(diags("entity-rule o-1\n  slot o\n  type Need\n  chain no\n  is-plural-noun(left.o)\nend\n"),
                  Severity::kError), 1u);
  // Wildcards are triple-rule only.
  EXPECT_GE(count(diags("entity-rule o-1\n  slot o\n  type Need\n  chain no\n  dep-exists(p, *, obj)\nend\n"),
                  Severity::kError), 1u);
  // No conditions: warning only.
  auto ds = diags("entity-rule o-1\n  slot o\n  type Need\n  chain no\nend\n");
  EXPECT_EQ(count(ds, Severity::kError), 0u);
  EXPECT_EQ(count(ds, Severity::kWarning), 1u);
}

TEST(Validate, TripleRuleChecks) {
  auto errors = [](const std::string& body) {
    return count(validate_rules(parse_rules("triple-rule RT-1\n" + body + "end\n")), Severity::kError);
  };
  EXPECT_EQ(errors("  vars A B C\n  dep-exists(B, A, nsubj)\n  dep-exists(B, C, obj)\n  emit s=A p=A o=C\n"), 1u);
  EXPECT_EQ(errors("  vars A B C\n  dep-exists(B, X, nsubj)\n  dep-exists(B, C, obj)\n  emit s=A p=B o=C\n"), 1u);
  EXPECT_EQ(errors("  vars A B C\n  dep-exists(*, *, nsubj)\n  dep-exists(B, C, obj)\n"
                   "  dep-exists(B, A, obj)\n  emit s=A p=B o=C\n"), 1u);
}

TEST(Serialize, DefaultIsFixedPoint) {
  const RuleSet& rules = test::default_rules();
  const std::string once = serialize_rules(rules);
  RuleSet back = parse_rules(once);
  EXPECT_EQ(back, rules);
  EXPECT_EQ(serialize_rules(back), once);
}

TEST(Serialize, RandomRulesRoundTrip) {
  synth::Rng rng(21);
  for (int i = 0; i < 200; ++i) {
    RuleSet r;
    r.lexicons = synth::random_rule_lexicons();
    const int n = synth::uniform(rng, 1, 4);
    for (int k = 0; k < n; ++k) r.triple_rules.push_back(synth::random_triple_rule(rng, "RT-" + std::to_string(k + 1)));
    const std::string text = serialize_rules(r);
    RuleSet back = parse_rules(text);
    EXPECT_EQ(back, r) << text;
  }
}

TEST(Labels, SubtypeMatching) {
  EXPECT_TRUE(deprel_matches("obl", "obl"));
  EXPECT_TRUE(deprel_matches("obl:tmod", "obl"));
  EXPECT_FALSE(deprel_matches("obl", "obl:tmod"));
  EXPECT_TRUE(deprel_matches("nmod:poss", "nmod:poss"));
  EXPECT_FALSE(deprel_matches("nmod:poss", "nmod:tmod"));
  EXPECT_FALSE(deprel_matches("oblique", "obl"));
}

TEST(PosPredicates, XposFirstThenUposWithFeatures) {
  const Features none;
  const Features plural = {{"Number", "Plur"}};
  const Features vbz = {{"Number", "Sing"}, {"Person", "3"}, {"Tense", "Pres"}};
  EXPECT_TRUE(is_proper_noun("PROPN", "NNP", none));
  EXPECT_TRUE(is_proper_noun("PROPN", "", none));
  EXPECT_FALSE(is_proper_noun("PROPN", "NN", none));
  EXPECT_TRUE(is_plural_noun("NOUN", "NNS", none));
  EXPECT_TRUE(is_plural_noun("NOUN", "", plural));
  EXPECT_FALSE(is_plural_noun("NOUN", "", none));
  EXPECT_TRUE(is_vbz("VERB", "VBZ", none));
  EXPECT_TRUE(is_vbz("VERB", "", vbz));
  EXPECT_FALSE(is_vbz("AUX", "", vbz));
  EXPECT_FALSE(is_vbz("VERB", "VBP", vbz));
}

}  // namespace
}  // namespace spo
