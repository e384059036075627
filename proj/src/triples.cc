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

#include "spo/triples.h"

#include <algorithm>

namespace spo {
namespace {

bool is_possessive_clitic(const Token& tok) {
  return tok.deprel == "case" &&
         (tok.xpos == "POS" || tok.form == "'s" || tok.form == "'" || tok.form == "’s");
}

bool is_modifier(const Token& tok, const std::vector<std::string>& deprels) {
  for (const auto& d : deprels) {
    if (deprel_matches(tok.deprel, d)) return true;
  }
  return false;
}

HeadInfo head_info(const Token& tok) {
  return HeadInfo{tok.lemma, tok.upos, tok.xpos, tok.feats, tok.deprel, tok.head};
}

std::optional<Phrase> make_phrase(const Sentence& sentence, int head, int begin, int end) {
  Phrase phrase;
  try {
    phrase.text = normalize_phrase_text(join_surface(sentence, begin, end));
  } catch (const InputError&) {
    return std::nullopt;
  }
  phrase.head = TokenRef{sentence.sentence_index, head};
  phrase.span_begin = begin;
  phrase.span_end = end;
  phrase.head_info = head_info(sentence.token(head));
  return phrase;
}

// Per-sentence adjacency used by the matcher.
struct Tree {
  explicit Tree(const Sentence& s) : sentence(s), children(s.size() + 1) {
    for (const auto& t : s.tokens) children[t.head].push_back(t.index);
  }
  const Sentence& sentence;
  std::vector<std::vector<int>> children;  // children[0] holds the root
};

class RuleMatcher {
 public:
  RuleMatcher(const Tree& tree, const TripleRule& rule, const RuleSet& rules)
      : tree_(tree), rule_(rule), rules_(rules), binding_(rule.variables.size(), 0) {
    const int nvars = static_cast<int>(rule.variables.size());
    // A condition is checked as soon as its last variable is bound.
    checks_.resize(nvars);
    for (const auto& c : rule.conditions) {
      int last = -1;
      for (int v : var_indices(c)) last = std::max(last, v);
      if (last < 0) {
        ground_.push_back(&c);
      } else {
        checks_[last].push_back(&c);
      }
    }
  }

  std::vector<std::vector<int>> run() {
    for (const Condition* c : ground_) {
      if (!holds(*c)) return {};
    }
    if (binding_.empty()) return {};
    bind(0);
    return std::move(matches_);
  }

 private:
  std::vector<int> var_indices(const Condition& c) const {
    std::vector<int> out;
    const size_t nargs = (c.kind == ConditionKind::kDepExists ||
                          c.kind == ConditionKind::kDepAbsent) ? 2 : 1;
    for (size_t i = 0; i < nargs; ++i) out.push_back(var_index(c.args[i]));
    out.erase(std::remove(out.begin(), out.end(), -1), out.end());
    return out;
  }

  int var_index(const std::string& name) const {
    for (size_t i = 0; i < rule_.variables.size(); ++i) {
      if (rule_.variables[i] == name) return static_cast<int>(i);
    }
    return -1;
  }

  // Narrow the candidates of variable k using a dep-exists edge to a
  // variable bound earlier, falling back to every token.
  std::vector<int> candidates(int k) const {
    const Sentence& s = tree_.sentence;
    for (const auto& c : rule_.conditions) {
      if (c.kind != ConditionKind::kDepExists) continue;
      const int gov = var_index(c.args[0]);
      const int dep = var_index(c.args[1]);
      if (dep == k && gov >= 0 && gov < k) {
        std::vector<int> out;
        for (int child : tree_.children[binding_[gov]]) {
          if (deprel_matches(s.token(child).deprel, c.args[2])) out.push_back(child);
        }
        return out;
      }
      if (gov == k && dep >= 0 && dep < k) {
        const Token& d = s.token(binding_[dep]);
        if (d.head > 0 && deprel_matches(d.deprel, c.args[2])) return {d.head};
        return {};
      }
    }
    std::vector<int> all(s.size());
    for (int i = 0; i < s.size(); ++i) all[i] = i + 1;
    return all;
  }

  void bind(int k) {
    for (int tok : candidates(k)) {
      if (std::find(binding_.begin(), binding_.begin() + k, tok) != binding_.begin() + k) {
        continue;
      }
      binding_[k] = tok;
      bool ok = true;
      for (const Condition* c : checks_[k]) {
        if (!holds(*c)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      if (k + 1 == static_cast<int>(binding_.size())) {
        matches_.push_back(binding_);
      } else {
        bind(k + 1);
      }
    }
  }

  int value(const std::string& arg) const {
    const int v = var_index(arg);
    return v < 0 ? 0 : binding_[v];
  }

  bool dep_exists(const Condition& c) const {
    const Sentence& s = tree_.sentence;
    const std::string& label = c.args[2];
    if (c.args[1] == kWildcard) {
      for (int child : tree_.children[value(c.args[0])]) {
        if (deprel_matches(s.token(child).deprel, label)) return true;
      }
      return false;
    }
    const Token& dep = s.token(value(c.args[1]));
    if (!deprel_matches(dep.deprel, label)) return false;
    return c.args[0] == kWildcard || dep.head == value(c.args[0]);
  }

  bool holds(const Condition& c) const {
    const Sentence& s = tree_.sentence;
    switch (c.kind) {
      case ConditionKind::kDepExists: return dep_exists(c);
      case ConditionKind::kDepAbsent: return !dep_exists(c);
      default: break;
    }
    const Token& tok = s.token(value(c.args[0]));
    switch (c.kind) {
      case ConditionKind::kPosIs: return tok.xpos == c.args[1] || tok.upos == c.args[1];
      case ConditionKind::kLexiconMember: {
        const Lexicon* lex = rules_.lexicon(c.args[1]);
        return lex && (lex->contains(tok.form) || (!tok.lemma.empty() && lex->contains(tok.lemma)));
      }
      case ConditionKind::kSlotTextEquals: {
        auto phrase = try_build_slot_phrase(s, tok.index, effective_modifier_deprels(rules_));
        return phrase && phrase->text == c.args[1];
      }
      case ConditionKind::kIsProperNoun: return is_proper_noun(tok.upos, tok.xpos, tok.feats);
      case ConditionKind::kIsPluralNoun: return is_plural_noun(tok.upos, tok.xpos, tok.feats);
      case ConditionKind::kIsVbz: return is_vbz(tok.upos, tok.xpos, tok.feats);
      default: return false;
    }
  }

  const Tree& tree_;
  const TripleRule& rule_;
  const RuleSet& rules_;
  std::vector<int> binding_;
  std::vector<std::vector<const Condition*>> checks_;
  std::vector<const Condition*> ground_;
  std::vector<std::vector<int>> matches_;
};

}  // namespace

std::string join_surface(const Sentence& sentence, int begin, int end) {
  std::string out;
  for (int i = begin; i <= end; ++i) {
    const Token& t = sentence.token(i);
    out += t.form;
    if (i < end && t.space_after) out += ' ';
  }
  return out;
}

const std::vector<std::string>& effective_modifier_deprels(const RuleSet& rules) {
  return rules.modifier_deprels.empty() ? default_modifier_deprels() : rules.modifier_deprels;
}

std::optional<Phrase> try_build_slot_phrase(const Sentence& sentence, int head,
                                            const std::vector<std::string>& modifier_deprels) {
  const int n = sentence.size();
  std::vector<char> in(n + 2, 0);
  std::vector<int> stack = {head};
  in[head] = 1;
  while (!stack.empty()) {
    const int cur = stack.back();
    stack.pop_back();
    for (const auto& t : sentence.tokens) {
      if (t.head != cur || in[t.index]) continue;
      const bool clitic = t.index > cur && is_possessive_clitic(t);
      if (clitic || is_modifier(t, modifier_deprels)) {
        in[t.index] = 1;
        stack.push_back(t.index);
      }
    }
  }
  int begin = head;
  int end = head;
  while (begin > 1 && in[begin - 1]) --begin;
  while (end < n && in[end + 1]) ++end;
  return make_phrase(sentence, head, begin, end);
}

Phrase build_slot_phrase(const Sentence& sentence, int head,
                         const std::vector<std::string>& modifier_deprels) {
  auto phrase = try_build_slot_phrase(sentence, head, modifier_deprels);
  if (!phrase) throw InputError("empty phrase");
  return *phrase;
}

std::optional<Phrase> phrase_from_span(const Sentence& sentence, int begin, int end) {
  int head = begin;
  for (int i = begin; i <= end; ++i) {
    const int h = sentence.token(i).head;
    if (h < begin || h > end) {
      head = i;
      break;
    }
  }
  return make_phrase(sentence, head, begin, end);
}

std::vector<std::vector<int>> match_rule(const Sentence& sentence, const TripleRule& rule,
                                         const RuleSet& rules) {
  Tree tree(sentence);
  auto matches = RuleMatcher(tree, rule, rules).run();
  std::sort(matches.begin(), matches.end());
  return matches;
}

std::vector<Triple> extract_triples(const Document& doc, const RuleSet& rules) {
  std::vector<const TripleRule*> ordered;
  for (const auto& r : rules.triple_rules) ordered.push_back(&r);
  std::stable_sort(ordered.begin(), ordered.end(), [](const TripleRule* a, const TripleRule* b) {
    return rule_id_less(a->id, b->id);
  });
  const auto& deprels = effective_modifier_deprels(rules);

  TripleSet out(TripleSet::Identity::kOccurrence);
  for (const auto& sentence : doc.sentences) {
    Tree tree(sentence);
    for (const TripleRule* rule : ordered) {
      auto slot_index = [&](const std::string& var) {
        return static_cast<size_t>(
            std::find(rule->variables.begin(), rule->variables.end(), var) -
            rule->variables.begin());
      };
      const size_t si = slot_index(rule->emit.subject);
      const size_t pi = slot_index(rule->emit.predicate);
      const size_t oi = slot_index(rule->emit.object);
      if (si >= rule->variables.size() || pi >= rule->variables.size() ||
          oi >= rule->variables.size()) {
        throw InvariantError("rule " + rule->id + " emits an unbound variable");
      }
      auto matches = RuleMatcher(tree, *rule, rules).run();
      std::sort(matches.begin(), matches.end(), [&](const auto& a, const auto& b) {
        return std::tie(a[si], a[pi], a[oi], a) < std::tie(b[si], b[pi], b[oi], b);
      });
      for (const auto& m : matches) {
        auto s = try_build_slot_phrase(sentence, m[si], deprels);
        auto p = try_build_slot_phrase(sentence, m[pi], deprels);
        auto o = try_build_slot_phrase(sentence, m[oi], deprels);
        if (!s || !p || !o) continue;
        Triple t;
        t.subject = std::move(*s);
        t.predicate = std::move(*p);
        t.object = std::move(*o);
        t.rules = {rule->id};
        t.origin = Origin::kDirect;
        t.doc_id = doc.doc_id;
        out.add(std::move(t));
      }
    }
  }
  return out.release();
}

}  // namespace spo
