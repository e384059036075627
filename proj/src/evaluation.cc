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

#include "spo/evaluation.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <tuple>

namespace spo {
namespace {

using TermKey = std::tuple<std::string, EntityType, std::string>;

TermKey key_of(const GoldLabel& g) { return {g.doc_id, g.entity_type, g.phrase}; }

std::vector<RuleStats> rules_of_type(const std::vector<RuleStats>& stats, EntityType type) {
  std::vector<RuleStats> out;
  for (const auto& s : stats) {
    if (s.rule.type == type) out.push_back(s);
  }
  return out;
}

std::string pad(std::string s, size_t width) {
  if (s.size() < width) s.insert(s.begin(), width - s.size(), ' ');
  return s;
}

std::string pad_right(std::string s, size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

int64_t parse_count(const std::string& s, int line_no) {
  int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || v < 0) {
    throw InputError("replay line " + std::to_string(line_no) + ": bad count '" + s + "'");
  }
  return v;
}

}  // namespace

double mcc(const ConfusionMatrix& m) {
  const double tp = static_cast<double>(m.tp);
  const double tn = static_cast<double>(m.tn);
  const double fp = static_cast<double>(m.fp);
  const double fn = static_cast<double>(m.fn);
  const double denom = (tp + fp) * (tp + fn) * (tn + fp) * (tn + fn);
  if (denom == 0) return 0;
  return (tp * tn - fp * fn) / std::sqrt(denom);
}

double f_score(const ConfusionMatrix& m) {
  if (m.tp == 0) return 0;
  const double tp = static_cast<double>(m.tp);
  return 2 * tp / (2 * tp + static_cast<double>(m.fp) + static_cast<double>(m.fn));
}

std::vector<RuleInfo> rule_catalog(const RuleSet& rules) {
  std::vector<RuleInfo> out;
  for (const auto& r : rules.entity_rules) {
    out.push_back({r.id, r.target_type, slot_letter(r.slot), r.requires_chain});
  }
  return out;
}

RuleStats make_rule_stats(const RuleInfo& rule, const ConfusionMatrix& confusion) {
  return RuleStats{rule, confusion, f_score(confusion), mcc(confusion)};
}

ConfusionResult confusion_from_gold(const std::vector<ExtractedTerm>& extracted,
                                    const std::vector<RuleInfo>& rules,
                                    const std::vector<GoldLabel>& gold,
                                    const std::set<std::string>& documents) {
  if (gold.empty()) throw EvaluationError("no gold data");
  std::map<TermKey, std::set<std::string>> fired;
  for (const auto& t : extracted) {
    auto& f = fired[{t.doc_id, t.type, t.text}];
    f.insert(t.fired_rules.begin(), t.fired_rules.end());
  }

  ConfusionResult result;
  for (const auto& r : rules) result.by_rule[r.id] = ConfusionMatrix{};

  std::set<TermKey> counted;
  for (const auto& g : gold) {
    if (!documents.count(g.doc_id)) {
      result.warnings.push_back("gold label for unknown document '" + g.doc_id + "' skipped");
      continue;
    }
    if (!counted.insert(key_of(g)).second) {
      result.warnings.push_back("duplicate gold label for '" + g.phrase + "' in '" + g.doc_id +
                                "' skipped");
      continue;
    }
    auto it = fired.find(key_of(g));
    for (const auto& r : rules) {
      if (r.type != g.entity_type) continue;
      const bool did_fire = it != fired.end() && it->second.count(r.id) > 0;
      auto& m = result.by_rule[r.id];
      if (did_fire) {
        ++(g.correct ? m.tp : m.fp);
      } else {
        ++(g.correct ? m.fn : m.tn);
      }
    }
  }
  return result;
}

std::vector<std::pair<std::string, double>> gated_rule_weights(
    const std::set<std::string>& fired_rules, const std::vector<RuleStats>& rules_for_type,
    bool strict) {
  std::vector<std::pair<std::string, double>> out;
  for (const auto& r : rules_for_type) {
    const bool active = (strict || fired_rules.count(r.rule.id) > 0) && r.mcc > 0;
    out.emplace_back(r.rule.id, active ? r.mcc : 0.0);
  }
  return out;
}

double entity_score(const std::set<std::string>& fired_rules,
                    const std::vector<RuleStats>& rules_for_type, bool strict) {
  if (rules_for_type.empty()) throw EvaluationError("no rules for type");
  double sum = 0;
  for (const auto& [id, w] : gated_rule_weights(fired_rules, rules_for_type, strict)) sum += w;
  return sum / static_cast<double>(rules_for_type.size());
}

double roc_auc(const std::vector<std::pair<double, int>>& scored) {
  std::vector<std::pair<double, int>> sorted = scored;
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  double positive_rank_sum = 0;
  int64_t positives = 0;
  size_t i = 0;
  while (i < sorted.size()) {
    size_t j = i;
    while (j < sorted.size() && sorted[j].first == sorted[i].first) ++j;
    // Ranks i+1 .. j share the midrank.
    const double midrank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (size_t k = i; k < j; ++k) {
      if (sorted[k].second) {
        positive_rank_sum += midrank;
        ++positives;
      }
    }
    i = j;
  }
  const int64_t negatives = static_cast<int64_t>(sorted.size()) - positives;
  if (positives == 0 || negatives == 0) throw EvaluationError("degenerate labels");
  const double np = static_cast<double>(positives);
  const double u = positive_rank_sum - np * (np + 1) / 2.0;
  return u / (np * static_cast<double>(negatives));
}

std::vector<TypeAggregate> aggregate_without_gold(const std::vector<RuleStats>& stats) {
  std::vector<TypeAggregate> out;
  for (EntityType type : all_entity_types()) {
    TypeAggregate agg;
    agg.type = type;
    const auto rules = rules_of_type(stats, type);
    agg.rules = static_cast<int>(rules.size());
    if (!rules.empty()) {
      std::set<std::string> all;
      for (const auto& r : rules) all.insert(r.rule.id);
      agg.all_fired_w_e = entity_score(all, rules);
      agg.max_rule_mcc = rules.front().mcc;
      for (const auto& r : rules) agg.max_rule_mcc = std::max(agg.max_rule_mcc, r.mcc);
    }
    out.push_back(agg);
  }
  return out;
}

EvaluationResult evaluate(const std::vector<ExtractedTerm>& extracted,
                          const std::vector<RuleInfo>& rules,
                          const std::vector<GoldLabel>& gold,
                          const std::set<std::string>& documents,
                          const EvaluationOptions& options) {
  EvaluationResult result;
  // Pass 1: confusion counts and frozen MCCs.
  ConfusionResult confusion = confusion_from_gold(extracted, rules, gold, documents);
  result.warnings = std::move(confusion.warnings);
  for (const auto& r : rules) {
    result.stats.push_back(make_rule_stats(r, confusion.by_rule.at(r.id)));
  }
  result.aggregates = aggregate_without_gold(result.stats);

  // Pass 2: weight every judged term with the frozen MCCs.
  std::map<TermKey, std::set<std::string>> fired;
  for (const auto& t : extracted) {
    fired[{t.doc_id, t.type, t.text}].insert(t.fired_rules.begin(), t.fired_rules.end());
  }
  std::map<EntityType, std::vector<std::pair<double, int>>> by_type;
  std::set<TermKey> seen;
  for (const auto& g : gold) {
    if (!documents.count(g.doc_id) || !seen.insert(key_of(g)).second) continue;
    const auto type_rules = rules_of_type(result.stats, g.entity_type);
    if (type_rules.empty()) continue;
    auto it = fired.find(key_of(g));
    const std::set<std::string> none;
    const auto& f = it == fired.end() ? none : it->second;
    ScoredExtraction s;
    s.term = g;
    s.rule_weights = gated_rule_weights(f, type_rules, options.eq1_strict);
    s.w_e = entity_score(f, type_rules, options.eq1_strict);
    by_type[g.entity_type].emplace_back(s.w_e, g.correct ? 1 : 0);
    result.scored.push_back(std::move(s));
  }
  for (auto& agg : result.aggregates) {
    auto it = by_type.find(agg.type);
    if (it == by_type.end()) continue;
    const auto& scores = it->second;
    agg.scored_terms = static_cast<int>(scores.size());
    double sum = 0;
    for (const auto& [w, label] : scores) sum += w;
    agg.w_e_mean = sum / static_cast<double>(scores.size());
    try {
      agg.auc = roc_auc(scores);
    } catch (const EvaluationError&) {
      result.warnings.push_back("AUC undefined for " +
                                std::string(entity_type_name(agg.type)) +
                                ": judged terms are all one class");
    }
  }
  return result;
}

std::string format_fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
  std::string s = buf;
  if (s[0] == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

StatsReport render_stats_table(const std::vector<RuleStats>& stats,
                               const std::vector<TypeAggregate>& aggregates) {
  StatsReport report;
  std::ostringstream csv;
  csv << "rule_id,slot,chain,tn,fp,fn,tp,f_score,mcc\n";
  for (const auto& s : stats) {
    const auto& m = s.confusion;
    csv << s.rule.id << ',' << s.rule.slot << ',' << (s.rule.chain ? 1 : 0) << ',' << m.tn
        << ',' << m.fp << ',' << m.fn << ',' << m.tp << ',' << format_fixed(s.f_score, 4)
        << ',' << format_fixed(s.mcc, 4) << '\n';
  }
  report.stats_csv = csv.str();

  std::ostringstream agg_csv;
  agg_csv << "entity_type,w_e_mean,auc,acceptable\n";
  for (const auto& a : aggregates) {
    agg_csv << entity_type_name(a.type) << ',' << format_fixed(a.w_e_mean, 4) << ','
            << (a.auc ? format_fixed(*a.auc, 4) : "NA") << ',' << (a.acceptable() ? 1 : 0)
            << '\n';
  }
  report.aggregate_csv = agg_csv.str();

  std::ostringstream table;
  table << pad_right("Rule", 10) << pad("TN", 8) << pad("FP", 8) << pad("FN", 8)
        << pad("TP", 8) << pad("F-S", 7) << pad("MCC", 7) << '\n';
  for (const auto& a : aggregates) {
    bool any_rule = false;
    for (const auto& s : stats) any_rule |= s.rule.type == a.type;
    if (!any_rule && !a.auc) continue;
    table << entity_type_name(a.type) << '\n';
    for (const auto& s : stats) {
      if (s.rule.type != a.type) continue;
      const auto& m = s.confusion;
      std::string id = "  " + s.rule.id + (s.rule.chain ? " #" : "");
      table << pad_right(id, 10) << pad(std::to_string(m.tn), 8) << pad(std::to_string(m.fp), 8)
            << pad(std::to_string(m.fn), 8) << pad(std::to_string(m.tp), 8)
            << pad(format_fixed(s.f_score, 2), 7) << pad(format_fixed(s.mcc, 2), 7)
            << (s.f_score > 0.7 && s.mcc < 0 ? "  high F-S, negative MCC" : "") << '\n';
    }
    table << "  Aggr    w_e(all fired)=" << format_fixed(a.all_fired_w_e, 2)
          << "  max MCC=" << format_fixed(a.max_rule_mcc, 2)
          << "  mean w_e=" << format_fixed(a.w_e_mean, 2) << " over " << a.scored_terms
          << " terms  AUC=" << (a.auc ? format_fixed(*a.auc, 2) : "NA")
          << (a.acceptable() ? "  acceptable" : "") << '\n';
  }
  table << "# = chain rule; AUC >= " << format_fixed(kAcceptableAuc, 1) << " is acceptable\n";
  report.table = table.str();
  return report;
}

std::vector<RuleStats> parse_stats_replay(std::string_view csv_text) {
  std::vector<RuleStats> out;
  int line_no = 0;
  size_t start = 0;
  bool header = true;
  while (start < csv_text.size()) {
    size_t pos = csv_text.find('\n', start);
    if (pos == std::string_view::npos) pos = csv_text.size();
    std::string_view line = csv_text.substr(start, pos - start);
    start = pos + 1;
    ++line_no;
    if (line.empty() || line == "\r") continue;
    auto f = split_csv_line(line);
    if (header) {
      header = false;
      if (!f.empty() && f[0] == "rule_id") continue;
    }
    if (f.size() != 7) {
      throw InputError("replay line " + std::to_string(line_no) + ": expected 7 fields");
    }
    auto type = parse_entity_type(f[1]);
    if (!type) {
      throw InputError("replay line " + std::to_string(line_no) + ": unknown entity_type '" +
                       f[1] + "'");
    }
    RuleInfo info{f[0], *type, f[0].empty() ? 'o' : f[0][0], f[2] == "1"};
    ConfusionMatrix m;
    m.tn = parse_count(f[3], line_no);
    m.fp = parse_count(f[4], line_no);
    m.fn = parse_count(f[5], line_no);
    m.tp = parse_count(f[6], line_no);
    out.push_back(make_rule_stats(info, m));
  }
  return out;
}

}  // namespace spo
