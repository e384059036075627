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

#include "spo/rules.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "spo/ingest.h"

namespace spo {
namespace {

struct KindInfo {
  ConditionKind kind;
  std::string_view name;
  size_t arity;
};

constexpr KindInfo kKinds[] = {
    {ConditionKind::kDepExists, "dep-exists", 3},
    {ConditionKind::kDepAbsent, "dep-absent", 3},
    {ConditionKind::kPosIs, "pos-is", 2},
    {ConditionKind::kLexiconMember, "lexicon-member", 2},
    {ConditionKind::kSlotTextEquals, "slot-text-equals", 2},
    {ConditionKind::kIsProperNoun, "is-proper-noun", 1},
    {ConditionKind::kIsPluralNoun, "is-plural-noun", 1},
    {ConditionKind::kIsVbz, "is-vbz", 1},
};

const KindInfo& kind_info(ConditionKind kind) {
  for (const auto& k : kKinds) {
    if (k.kind == kind) return k;
  }
  return kKinds[0];
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string> words(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool is_text_arg(ConditionKind kind, size_t position) {
  return kind == ConditionKind::kSlotTextEquals && position == 1;
}

const std::set<std::string>& chain_variables() {
  static const std::set<std::string> kVars = {"left.s", "left.p", "left.o",
                                              "right.s", "right.p", "right.o"};
  return kVars;
}

bool is_dep_kind(ConditionKind kind) {
  return kind == ConditionKind::kDepExists || kind == ConditionKind::kDepAbsent;
}

// Variables referenced by a condition (wildcards excluded).
std::vector<std::string> condition_variables(const Condition& c) {
  std::vector<std::string> vars;
  if (c.args.empty()) return vars;
  if (is_dep_kind(c.kind)) {
    for (size_t i = 0; i < 2 && i < c.args.size(); ++i) {
      if (c.args[i] != kWildcard) vars.push_back(c.args[i]);
    }
  } else {
    vars.push_back(c.args[0]);
  }
  return vars;
}

// dep-exists(H, D, l) against dep-absent(H, D, l) or dep-absent(H, *, l).
std::vector<Diagnostic> contradictions(std::string_view rule_id,
                                       const std::vector<Condition>& conditions) {
  std::vector<Diagnostic> out;
  for (const auto& ex : conditions) {
    if (ex.kind != ConditionKind::kDepExists) continue;
    for (const auto& ab : conditions) {
      if (ab.kind != ConditionKind::kDepAbsent) continue;
      const bool same_label = ab.args[2] == ex.args[2];
      const bool gov = ab.args[0] == ex.args[0] || ab.args[0] == kWildcard;
      const bool dep = ab.args[1] == ex.args[1] || ab.args[1] == kWildcard;
      if (same_label && gov && dep) {
        out.push_back({Severity::kWarning, std::string(rule_id),
                       "contradictory conditions dep-exists(" + ex.args[0] + ", " +
                           ex.args[1] + ", " + ex.args[2] + ") and dep-absent(" +
                           ab.args[0] + ", " + ab.args[1] + ", " + ab.args[2] +
                           "); rule can never fire"});
      }
    }
  }
  return out;
}

class RuleParser {
 public:
  RuleSet parse(std::string_view text) {
    size_t start = 0;
    while (start <= text.size()) {
      size_t pos = text.find('\n', start);
      if (pos == std::string_view::npos) pos = text.size();
      ++line_no_;
      handle(text.substr(start, pos - start));
      start = pos + 1;
    }
    if (section_ != Section::kNone) fail("unterminated block '" + block_id_ + "', missing 'end'");
    check_lexicon_references();
    return std::move(rules_);
  }

 private:
  enum class Section { kNone, kLexicon, kTripleRule, kEntityRule };

  [[noreturn]] void fail(const std::string& what) const {
    throw RuleError("line " + std::to_string(line_no_) + ": " + what);
  }

  void handle(std::string_view raw) {
    std::string_view line = raw;
    // Comments start at '#' outside quotes.
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') quoted = !quoted;
      if (line[i] == '#' && !quoted) {
        line = line.substr(0, i);
        break;
      }
    }
    line = trim(line);
    if (line.empty()) return;

    if (line == "end") {
      if (section_ == Section::kNone) fail("'end' outside a block");
      close_block();
      return;
    }
    switch (section_) {
      case Section::kNone: top_level(line); break;
      case Section::kLexicon: rules_.lexicons.back().terms.insert(lower(line)); break;
      case Section::kTripleRule: triple_rule_line(line); break;
      case Section::kEntityRule: entity_rule_line(line); break;
    }
  }

  void top_level(std::string_view line) {
    auto w = words(line);
    const std::string& head = w[0];
    if (head == "option") {
      if (w.size() < 3 || w[2] != "=") fail("expected 'option <name> = <values>'");
      if (w[1] != "modifier-deprels") fail("unknown option '" + w[1] + "'");
      rules_.modifier_deprels.assign(w.begin() + 3, w.end());
      if (rules_.modifier_deprels.empty()) fail("modifier-deprels needs at least one value");
      return;
    }
    if (w.size() != 2) fail("expected '" + head + " <name>'");
    block_id_ = w[1];
    if (head == "lexicon") {
      for (const auto& l : rules_.lexicons) {
        if (l.name == w[1]) fail("duplicate lexicon '" + w[1] + "'");
      }
      section_ = Section::kLexicon;
      rules_.lexicons.push_back(Lexicon{w[1], {}});
    } else if (head == "triple-rule") {
      claim_id(w[1]);
      section_ = Section::kTripleRule;
      rules_.triple_rules.push_back(TripleRule{});
      rules_.triple_rules.back().id = w[1];
      saw_emit_ = false;
    } else if (head == "entity-rule") {
      claim_id(w[1]);
      section_ = Section::kEntityRule;
      rules_.entity_rules.push_back(EntityRule{});
      rules_.entity_rules.back().id = w[1];
      saw_slot_ = saw_type_ = false;
    } else {
      fail("unknown directive '" + head + "'");
    }
  }

  void claim_id(const std::string& id) {
    if (!ids_.insert(id).second) fail("duplicate rule id '" + id + "'");
  }

  void close_block() {
    if (section_ == Section::kLexicon && rules_.lexicons.back().terms.empty()) {
      fail("lexicon '" + block_id_ + "' is empty");
    }
    if (section_ == Section::kEntityRule && (!saw_slot_ || !saw_type_)) {
      fail("entity-rule '" + block_id_ + "' needs both 'slot' and 'type'");
    }
    section_ = Section::kNone;
  }

  void triple_rule_line(std::string_view line) {
    TripleRule& rule = rules_.triple_rules.back();
    auto w = words(line);
    if (w[0] == "vars") {
      rule.variables.assign(w.begin() + 1, w.end());
      return;
    }
    if (w[0] == "emit") {
      if (saw_emit_) fail("duplicate 'emit'");
      saw_emit_ = true;
      for (size_t i = 1; i < w.size(); ++i) {
        const auto eq = w[i].find('=');
        if (eq == std::string::npos) fail("expected slot=VAR in emit");
        const std::string slot = w[i].substr(0, eq);
        const std::string var = w[i].substr(eq + 1);
        if (slot == "s") rule.emit.subject = var;
        else if (slot == "p") rule.emit.predicate = var;
        else if (slot == "o") rule.emit.object = var;
        else fail("unknown slot '" + slot + "' in emit");
      }
      return;
    }
    rule.conditions.push_back(parse_condition(line));
  }

  void entity_rule_line(std::string_view line) {
    EntityRule& rule = rules_.entity_rules.back();
    auto w = words(line);
    if (w[0] == "slot") {
      if (w.size() != 2) fail("expected 'slot s|p|o'");
      if (w[1] == "s") rule.slot = Slot::kSubject;
      else if (w[1] == "p") rule.slot = Slot::kPredicate;
      else if (w[1] == "o") rule.slot = Slot::kObject;
      else fail("unknown slot '" + w[1] + "'");
      saw_slot_ = true;
      return;
    }
    if (w[0] == "type") {
      if (w.size() != 2) fail("expected 'type <EntityType>'");
      auto t = parse_entity_type(w[1]);
      if (!t) fail("unknown entity type '" + w[1] + "'");
      rule.target_type = *t;
      saw_type_ = true;
      return;
    }
    if (w[0] == "chain") {
      if (w.size() != 2 || (w[1] != "yes" && w[1] != "no")) fail("expected 'chain yes|no'");
      rule.requires_chain = w[1] == "yes";
      return;
    }
    rule.conditions.push_back(parse_condition(line));
  }

  Condition parse_condition(std::string_view line) {
    const size_t open = line.find('(');
    if (open == std::string_view::npos || line.back() != ')') {
      fail("expected '<kind>(<args>)'");
    }
    const std::string_view name = trim(line.substr(0, open));
    const KindInfo* info = nullptr;
    for (const auto& k : kKinds) {
      if (k.name == name) info = &k;
    }
    if (!info) fail("unknown condition kind '" + std::string(name) + "'");

    Condition cond;
    cond.kind = info->kind;
    const std::string_view body = line.substr(open + 1, line.size() - open - 2);
    std::string cur;
    bool quoted = false;
    bool was_quoted = false;
    auto push = [&] {
      std::string arg = was_quoted ? cur : std::string(trim(cur));
      if (arg.empty() && !was_quoted) fail("empty argument in " + std::string(name));
      cond.args.push_back(std::move(arg));
      cur.clear();
      was_quoted = false;
    };
    for (char c : body) {
      if (c == '"') {
        if (!quoted && !trim(cur).empty()) fail("unexpected quote");
        quoted = !quoted;
        if (quoted) cur.clear();
        was_quoted = true;
      } else if (c == ',' && !quoted) {
        push();
      } else if (!(was_quoted && !quoted)) {
        cur += c;
      } else if (!std::isspace(static_cast<unsigned char>(c))) {
        fail("text after closing quote");
      }
    }
    if (quoted) fail("unterminated string");
    push();
    if (cond.args.size() != info->arity) {
      fail(std::string(name) + " takes " + std::to_string(info->arity) + " argument(s)");
    }
    for (size_t i = 0; i < cond.args.size(); ++i) {
      if (is_text_arg(cond.kind, i)) {
        cond.args[i] = normalize_phrase_text(cond.args[i]);
      }
    }
    if (cond.kind == ConditionKind::kLexiconMember) {
      lexicon_refs_.push_back({cond.args[1], line_no_});
    }
    return cond;
  }

  void check_lexicon_references() {
    for (const auto& [name, line] : lexicon_refs_) {
      if (!rules_.lexicon(name)) {
        line_no_ = line;
        fail("reference to undeclared lexicon '" + name + "'");
      }
    }
  }

  RuleSet rules_;
  Section section_ = Section::kNone;
  std::string block_id_;
  int line_no_ = 0;
  bool saw_emit_ = false;
  bool saw_slot_ = false;
  bool saw_type_ = false;
  std::set<std::string> ids_;
  std::vector<std::pair<std::string, int>> lexicon_refs_;
};

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') continue;
    out += c;
  }
  return out + "\"";
}

void write_condition(std::ostream& out, const Condition& c) {
  out << "  " << condition_kind_name(c.kind) << "(";
  for (size_t i = 0; i < c.args.size(); ++i) {
    if (i) out << ", ";
    out << (is_text_arg(c.kind, i) ? quote(c.args[i]) : c.args[i]);
  }
  out << ")\n";
}

}  // namespace

std::string_view condition_kind_name(ConditionKind kind) { return kind_info(kind).name; }

char slot_letter(Slot slot) {
  switch (slot) {
    case Slot::kSubject: return 's';
    case Slot::kPredicate: return 'p';
    case Slot::kObject: return 'o';
  }
  return 'o';
}

bool Lexicon::contains(std::string_view word) const { return terms.count(lower(word)) > 0; }

const Lexicon* RuleSet::lexicon(std::string_view name) const {
  for (const auto& l : lexicons) {
    if (l.name == name) return &l;
  }
  return nullptr;
}

const EntityRule* RuleSet::entity_rule(std::string_view id) const {
  for (const auto& r : entity_rules) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

std::string format_diagnostic(const Diagnostic& d) {
  return std::string(d.severity == Severity::kError ? "error" : "warning") + ": rule " +
         d.rule_id + ": " + d.message;
}

RuleSet parse_rules(std::string_view text) { return RuleParser().parse(text); }

std::vector<Diagnostic> validate_rule(const TripleRule& rule) {
  std::vector<Diagnostic> out;
  auto error = [&](std::string msg) {
    out.push_back({Severity::kError, rule.id, std::move(msg)});
  };
  const std::set<std::string> declared(rule.variables.begin(), rule.variables.end());
  if (declared.size() != rule.variables.size()) error("duplicate variable in 'vars'");
  if (declared.count(std::string(kWildcard))) error("'*' cannot be declared as a variable");

  std::set<std::string> constrained;
  for (const auto& c : rule.conditions) {
    if (is_dep_kind(c.kind) && c.args[0] == kWildcard && c.args[1] == kWildcard) {
      error(std::string(condition_kind_name(c.kind)) + " cannot have two wildcards");
    }
    if (!is_dep_kind(c.kind) && c.args[0] == kWildcard) {
      error(std::string(condition_kind_name(c.kind)) + " does not accept a wildcard");
    }
    for (const auto& v : condition_variables(c)) {
      if (!declared.count(v)) {
        error("condition " + std::string(condition_kind_name(c.kind)) +
              " uses undeclared variable '" + v + "'");
      }
      constrained.insert(v);
    }
  }

  const std::pair<const char*, const std::string*> slots[] = {
      {"s", &rule.emit.subject}, {"p", &rule.emit.predicate}, {"o", &rule.emit.object}};
  for (const auto& [slot, var] : slots) {
    if (var->empty()) {
      error(std::string("emit does not assign slot ") + slot);
    } else if (!declared.count(*var)) {
      error(std::string("emit slot ") + slot + " uses unbound variable '" + *var + "'");
    }
  }
  if (!rule.emit.subject.empty() &&
      (rule.emit.subject == rule.emit.predicate || rule.emit.subject == rule.emit.object ||
       (!rule.emit.predicate.empty() && rule.emit.predicate == rule.emit.object))) {
    error("emit must assign three distinct variables");
  }
  for (const auto& v : rule.variables) {
    if (declared.count(v) && !constrained.count(v)) {
      out.push_back({Severity::kWarning, rule.id,
                     "variable '" + v + "' is not constrained by any condition"});
    }
  }
  auto contra = contradictions(rule.id, rule.conditions);
  out.insert(out.end(), contra.begin(), contra.end());
  return out;
}

std::vector<Diagnostic> validate_rule(const EntityRule& rule) {
  std::vector<Diagnostic> out;
  auto error = [&](std::string msg) {
    out.push_back({Severity::kError, rule.id, std::move(msg)});
  };
  const size_t dash = rule.id.find('-');
  if (dash == std::string::npos || dash + 1 == rule.id.size() ||
      !std::all_of(rule.id.begin() + dash + 1, rule.id.end(),
                   [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    error("entity rule id must look like '<slot>-<number>'");
  } else if (rule.id.substr(0, dash) != std::string(1, slot_letter(rule.slot))) {
    error("id prefix '" + rule.id.substr(0, dash) + "' does not match slot " +
          std::string(1, slot_letter(rule.slot)));
  }

  bool uses_chain = false;
  for (const auto& c : rule.conditions) {
    if (is_dep_kind(c.kind) && (c.args[0] == kWildcard || c.args[1] == kWildcard)) {
      error(std::string(condition_kind_name(c.kind)) +
            " in an entity rule needs two slot variables");
    }
    for (const auto& v : condition_variables(c)) {
      if (chain_variables().count(v)) {
        uses_chain = true;
      } else if (v != "s" && v != "p" && v != "o") {
        error("unknown slot variable '" + v + "'");
      }
    }
  }
  if (rule.requires_chain && !uses_chain) {
    error("chain rule does not reference left.* or right.*");
  }
  if (!rule.requires_chain && uses_chain) {
    error("rule references chain context but is not declared 'chain yes'");
  }
  if (rule.conditions.empty()) {
    out.push_back({Severity::kWarning, rule.id, "rule has no conditions"});
  }
  auto contra = contradictions(rule.id, rule.conditions);
  out.insert(out.end(), contra.begin(), contra.end());
  return out;
}

std::vector<Diagnostic> validate_rules(const RuleSet& rules) {
  std::vector<Diagnostic> out;
  for (const auto& r : rules.triple_rules) {
    auto d = validate_rule(r);
    out.insert(out.end(), d.begin(), d.end());
  }
  for (const auto& r : rules.entity_rules) {
    auto d = validate_rule(r);
    out.insert(out.end(), d.begin(), d.end());
  }
  return out;
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::kError; });
}

RuleSet load_rules(const std::filesystem::path& path) {
  RuleSet rules;
  try {
    rules = parse_rules(read_file(path));
  } catch (const RuleError& e) {
    throw RuleError(path.string() + ": " + e.what());
  }
  auto diags = validate_rules(rules);
  for (const auto& d : diags) {
    if (d.severity == Severity::kError) {
      throw RuleError(path.string() + ": " + format_diagnostic(d));
    }
  }
  return rules;
}

std::string serialize_rules(const RuleSet& rules) {
  std::ostringstream out;
  if (!rules.modifier_deprels.empty()) {
    out << "option modifier-deprels =";
    for (const auto& d : rules.modifier_deprels) out << ' ' << d;
    out << "\n\n";
  }
  for (const auto& lex : rules.lexicons) {
    out << "lexicon " << lex.name << "\n";
    for (const auto& t : lex.terms) out << "  " << t << "\n";
    out << "end\n\n";
  }
  for (const auto& r : rules.triple_rules) {
    out << "triple-rule " << r.id << "\n";
    if (!r.variables.empty()) {
      out << "  vars";
      for (const auto& v : r.variables) out << ' ' << v;
      out << "\n";
    }
    for (const auto& c : r.conditions) write_condition(out, c);
    out << "  emit";
    if (!r.emit.subject.empty()) out << " s=" << r.emit.subject;
    if (!r.emit.predicate.empty()) out << " p=" << r.emit.predicate;
    if (!r.emit.object.empty()) out << " o=" << r.emit.object;
    out << "\nend\n\n";
  }
  for (const auto& r : rules.entity_rules) {
    out << "entity-rule " << r.id << "\n"
        << "  slot " << slot_letter(r.slot) << "\n"
        << "  type " << entity_type_name(r.target_type) << "\n"
        << "  chain " << (r.requires_chain ? "yes" : "no") << "\n";
    for (const auto& c : r.conditions) write_condition(out, c);
    out << "end\n\n";
  }
  return out.str();
}

bool deprel_matches(std::string_view deprel, std::string_view label) {
  if (deprel == label) return true;
  if (label.find(':') != std::string_view::npos) return false;
  const size_t colon = deprel.find(':');
  return colon != std::string_view::npos && deprel.substr(0, colon) == label;
}

namespace {

bool feat_is(const Features& feats, const std::string& key, std::string_view value) {
  auto it = feats.find(key);
  return it != feats.end() && it->second == value;
}

}  // namespace

bool is_proper_noun(std::string_view upos, std::string_view xpos, const Features&) {
  if (!xpos.empty()) return xpos == "NNP" || xpos == "NNPS";
  return upos == "PROPN";
}

bool is_plural_noun(std::string_view upos, std::string_view xpos, const Features& feats) {
  if (!xpos.empty()) return xpos == "NNS" || xpos == "NNPS";
  return (upos == "NOUN" || upos == "PROPN") && feat_is(feats, "Number", "Plur");
}

bool is_vbz(std::string_view upos, std::string_view xpos, const Features& feats) {
  if (!xpos.empty()) return xpos == "VBZ";
  return upos == "VERB" && feat_is(feats, "Person", "3") &&
         feat_is(feats, "Number", "Sing") && feat_is(feats, "Tense", "Pres");
}

}  // namespace spo
