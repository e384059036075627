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

#include "spo/resolution.h"

#include <algorithm>

#include "spo/triples.h"

namespace spo {
namespace {

bool head_is_pronoun(const Phrase& p) {
  const auto& h = p.head_info;
  return h.upos == "PRON" || h.xpos == "PRP" || h.xpos == "PRP$" || h.xpos == "WP" ||
         h.xpos == "WP$";
}

// Representative phrase of the first chain with a mention overlapping
// `slot`; mentions containing the slot head win over mere overlaps.
std::optional<Phrase> representative_for(const Phrase& slot, const Document& doc) {
  auto find_chain = [&](auto&& matches) -> const CorefChain* {
    for (const auto& chain : doc.coref_chains) {
      for (const auto& m : chain.mentions) {
        if (m.sentence == slot.head.sentence && matches(m)) return &chain;
      }
    }
    return nullptr;
  };
  const CorefChain* chain = find_chain([&](const MentionSpan& m) {
    return m.start <= slot.head.token && slot.head.token <= m.end;
  });
  if (!chain) {
    chain = find_chain([&](const MentionSpan& m) {
      return m.start <= slot.span_end && slot.span_begin <= m.end;
    });
  }
  if (!chain) return std::nullopt;
  const MentionSpan& rep = chain->representative_mention();
  return phrase_from_span(doc.sentences.at(rep.sentence), rep.start, rep.end);
}

std::vector<Phrase> slot_options(const Phrase& slot, const Document& doc) {
  auto rep = representative_for(slot, doc);
  if (!rep) return {slot};
  if (head_is_pronoun(slot)) return {*rep};
  if (rep->text == slot.text) return {slot};
  return {slot, *rep};
}

std::string deprel_base(std::string_view deprel) {
  return std::string(deprel.substr(0, deprel.find(':')));
}

// Relation of `slot` to the predicate head when it is a direct dependent.
std::optional<std::string> relation_to(const Phrase& slot, const TokenRef& pred,
                                       const Document& doc) {
  if (slot.head.sentence != pred.sentence) return std::nullopt;
  const Token& t = doc.sentences.at(slot.head.sentence).token(slot.head.token);
  if (t.head != pred.token) return std::nullopt;
  return deprel_base(t.deprel);
}

// Dependent of `pred` in relation `rel` (first in token order).
std::optional<int> own_dependent(const Sentence& s, int pred, const std::string& rel) {
  for (const auto& t : s.tokens) {
    if (t.head == pred && deprel_base(t.deprel) == rel) return t.index;
  }
  return std::nullopt;
}

}  // namespace

std::vector<Triple> resolve_coreferences(const std::vector<Triple>& triples,
                                         const Document& doc) {
  if (doc.coref_chains.empty()) return triples;
  TripleSet out(TripleSet::Identity::kOccurrence);
  for (const auto& t : triples) {
    const auto subjects = slot_options(t.subject, doc);
    const auto predicates = slot_options(t.predicate, doc);
    const auto objects = slot_options(t.object, doc);
    for (const auto& s : subjects) {
      for (const auto& p : predicates) {
        for (const auto& o : objects) {
          Triple r = t;
          const bool changed = !(s == t.subject && p == t.predicate && o == t.object);
          r.subject = s;
          r.predicate = p;
          r.object = o;
          if (changed) r.origin = Origin::kCorefExpanded;
          out.add(std::move(r));
        }
      }
    }
  }
  return out.release();
}

std::vector<int> conjunct_set(const Sentence& sentence, int head) {
  std::vector<char> seen(sentence.size() + 1, 0);
  std::vector<int> stack = {head};
  seen[head] = 1;
  std::vector<int> out;
  while (!stack.empty()) {
    const int cur = stack.back();
    stack.pop_back();
    out.push_back(cur);
    const Token& tok = sentence.token(cur);
    if (deprel_base(tok.deprel) == "conj" && tok.head > 0 && !seen[tok.head]) {
      seen[tok.head] = 1;
      stack.push_back(tok.head);
    }
    for (const auto& t : sentence.tokens) {
      if (t.head == cur && deprel_base(t.deprel) == "conj" && !seen[t.index]) {
        seen[t.index] = 1;
        stack.push_back(t.index);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Triple> expand_conjunctions(const std::vector<Triple>& triples,
                                        const Document& doc,
                                        const std::vector<std::string>& modifier_deprels) {
  TripleSet out;
  for (const auto& t : triples) {
    out.add(t);
    const TokenRef hp = t.predicate.head;
    const Sentence& psent = doc.sentences.at(hp.sentence);
    const Sentence& ssent = doc.sentences.at(t.subject.head.sentence);
    const Sentence& osent = doc.sentences.at(t.object.head.sentence);
    const auto srel = relation_to(t.subject, hp, doc);
    const auto orel = relation_to(t.object, hp, doc);

    // Conjuncts of `slot` as seen from predicate p: its own dependent in
    // the same relation if it has one, otherwise the shared slot.
    struct Candidates {
      const Sentence* sentence;
      std::vector<int> heads;
    };
    auto slot_for = [&](int p, const Phrase& slot, const Sentence& ssn,
                        const std::optional<std::string>& rel) {
      if (p != hp.token && rel) {
        if (auto own = own_dependent(psent, p, *rel)) {
          return Candidates{&psent, conjunct_set(psent, *own)};
        }
      }
      return Candidates{&ssn, conjunct_set(ssn, slot.head.token)};
    };
    auto phrase_at = [&](const Sentence& s, int head, const Phrase& original) {
      if (s.sentence_index == original.head.sentence && head == original.head.token) {
        return std::optional<Phrase>(original);
      }
      return try_build_slot_phrase(s, head, modifier_deprels);
    };

    for (int p : conjunct_set(psent, hp.token)) {
      auto pphrase = phrase_at(psent, p, t.predicate);
      if (!pphrase) continue;
      const Candidates subs = slot_for(p, t.subject, ssent, srel);
      const Candidates objs = slot_for(p, t.object, osent, orel);
      for (int s : subs.heads) {
        auto sphrase = phrase_at(*subs.sentence, s, t.subject);
        if (!sphrase) continue;
        for (int o : objs.heads) {
          auto ophrase = phrase_at(*objs.sentence, o, t.object);
          if (!ophrase) continue;
          Triple r = t;
          r.subject = *sphrase;
          r.predicate = *pphrase;
          r.object = std::move(*ophrase);
          if (!(r.subject == t.subject && r.predicate == t.predicate && r.object == t.object)) {
            r.origin = Origin::kConjunctionExpanded;
          }
          out.add(std::move(r));
        }
      }
    }
  }
  return out.release();
}

}  // namespace spo
