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

#include "spo/entities.h"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

namespace spo {
namespace {

const Phrase* slot_of(const Triple* t, char slot) {
  if (!t) return nullptr;
  switch (slot) {
    case 's': return &t->subject;
    case 'p': return &t->predicate;
    case 'o': return &t->object;
  }
  return nullptr;
}

const Phrase* resolve(const std::string& var, const SlotContext& ctx) {
  if (var.size() == 1) return slot_of(ctx.triple, var[0]);
  if (var.rfind("left.", 0) == 0 && var.size() == 6) return slot_of(ctx.left, var[5]);
  if (var.rfind("right.", 0) == 0 && var.size() == 7) return slot_of(ctx.right, var[6]);
  return nullptr;
}

// Slots keep their head's governor, so an edge between two slot heads can
// be checked when both come from the same sentence.
bool dep_exists(const Phrase& gov, const Phrase& dep, const std::string& label) {
  return dep.head.sentence == gov.head.sentence && dep.head_info.governor == gov.head.token &&
         deprel_matches(dep.head_info.deprel, label);
}

bool holds(const Condition& c, const SlotContext& ctx, const RuleSet& rules) {
  const Phrase* a = resolve(c.args[0], ctx);
  if (!a) return false;
  const HeadInfo& h = a->head_info;
  switch (c.kind) {
    case ConditionKind::kDepExists:
    case ConditionKind::kDepAbsent: {
      const Phrase* b = resolve(c.args[1], ctx);
      if (!b) return false;
      const bool exists = dep_exists(*a, *b, c.args[2]);
      return c.kind == ConditionKind::kDepExists ? exists : !exists;
    }
    case ConditionKind::kPosIs: return h.xpos == c.args[1] || h.upos == c.args[1];
    case ConditionKind::kLexiconMember: {
      const Lexicon* lex = rules.lexicon(c.args[1]);
      return lex && (lex->contains(a->text) || (!h.lemma.empty() && lex->contains(h.lemma)));
    }
    case ConditionKind::kSlotTextEquals: return a->text == c.args[1];
    case ConditionKind::kIsProperNoun: return is_proper_noun(h.upos, h.xpos, h.feats);
    case ConditionKind::kIsPluralNoun: return is_plural_noun(h.upos, h.xpos, h.feats);
    case ConditionKind::kIsVbz: return is_vbz(h.upos, h.xpos, h.feats);
  }
  return false;
}

class MentionSet {
 public:
  void add(const EntityRule& rule, const Phrase& phrase, const std::string& doc_id) {
    auto key = std::make_pair(rule.target_type, phrase.text);
    auto it = index_.find(key);
    if (it == index_.end()) {
      index_.emplace(key, mentions_.size());
      mentions_.push_back(EntityMention{rule.target_type, phrase, doc_id, {rule.id}, std::nullopt});
      return;
    }
    auto& fired = mentions_[it->second].fired_rules;
    if (std::find(fired.begin(), fired.end(), rule.id) == fired.end()) {
      fired.push_back(rule.id);
      std::sort(fired.begin(), fired.end(), [](const auto& x, const auto& y) {
        return rule_id_less(x, y);
      });
    }
  }
  std::vector<EntityMention> release() { return std::move(mentions_); }

 private:
  std::vector<EntityMention> mentions_;
  std::map<std::pair<EntityType, std::string>, size_t> index_;
};

}  // namespace

bool entity_rule_matches(const EntityRule& rule, const SlotContext& ctx, const RuleSet& rules) {
  if (rule.requires_chain && (!ctx.left || !ctx.right)) return false;
  for (const auto& c : rule.conditions) {
    if (!holds(c, ctx, rules)) return false;
  }
  return true;
}

std::vector<EntityMention> extract_entities(const std::vector<Triple>& triples,
                                            const std::vector<TripleChain>& chains,
                                            const RuleSet& rules) {
  MentionSet out;
  for (const auto& rule : rules.entity_rules) {
    const char slot = slot_letter(rule.slot);
    if (rule.requires_chain) {
      for (const auto& c : chains) {
        SlotContext ctx{&c.derived, &c.left, &c.right};
        if (entity_rule_matches(rule, ctx, rules)) {
          out.add(rule, *slot_of(&c.derived, slot), c.derived.doc_id);
        }
      }
    } else {
      for (const auto& t : triples) {
        if (entity_rule_matches(rule, SlotContext{&t}, rules)) {
          out.add(rule, *slot_of(&t, slot), t.doc_id);
        }
      }
    }
  }
  return out.release();
}

std::vector<SemanticEdge> derive_semantic_edges(const std::vector<EntityMention>& mentions,
                                                const std::vector<Triple>& triples) {
  std::multimap<std::string, const EntityMention*> by_text;
  for (const auto& m : mentions) by_text.emplace(m.phrase.text, &m);

  std::vector<SemanticEdge> out;
  std::set<std::tuple<Relation, EntityType, std::string, EntityType, std::string>> seen;
  for (const auto& t : triples) {
    auto [slo, shi] = by_text.equal_range(t.subject.text);
    auto [olo, ohi] = by_text.equal_range(t.object.text);
    for (auto s = slo; s != shi; ++s) {
      for (auto o = olo; o != ohi; ++o) {
        const EntityMention& src = *s->second;
        const EntityMention& dst = *o->second;
        auto rel = relation_for(src.entity_type, dst.entity_type);
        if (!rel) continue;
        auto key = std::make_tuple(*rel, src.entity_type, src.phrase.text, dst.entity_type,
                                   dst.phrase.text);
        if (!seen.insert(key).second) continue;
        out.push_back(SemanticEdge{*rel, src, dst, t.doc_id});
      }
    }
  }
  return out;
}

}  // namespace spo
