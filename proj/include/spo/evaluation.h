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

// Rule-level evaluation against judged terms: confusion matrices,
// F-score, Matthews correlation, MCC-gated entity weights and ROC-AUC of
// those weights against correctness.
//
// Scoring is two-pass. Confusion counts (and therefore every rule's MCC)
// are computed over the whole corpus first; entity weights are computed
// afterwards from the frozen MCCs.

#ifndef SPO_EVALUATION_H_
#define SPO_EVALUATION_H_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "spo/ingest.h"
#include "spo/model.h"
#include "spo/rules.h"

namespace spo {

class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ConfusionMatrix {
  int64_t tp = 0;
  int64_t fp = 0;
  int64_t fn = 0;
  int64_t tn = 0;

  int64_t total() const { return tp + fp + fn + tn; }
  bool operator==(const ConfusionMatrix&) const = default;
};

// Matthews correlation coefficient; 0 when any marginal is empty.
double mcc(const ConfusionMatrix& m);

// Harmonic mean of precision and recall; 0 when tp == 0.
double f_score(const ConfusionMatrix& m);

// What the evaluator needs to know about an entity rule.
struct RuleInfo {
  std::string id;
  EntityType type = EntityType::kNeedSatisfier;
  char slot = 'o';
  bool chain = false;

  bool operator==(const RuleInfo&) const = default;
};

std::vector<RuleInfo> rule_catalog(const RuleSet& rules);

struct RuleStats {
  RuleInfo rule;
  ConfusionMatrix confusion;
  double f_score = 0;
  double mcc = 0;
};

RuleStats make_rule_stats(const RuleInfo& rule, const ConfusionMatrix& confusion);

// An extracted, typed term as read back from extraction output.
struct ExtractedTerm {
  std::string doc_id;
  EntityType type = EntityType::kNeedSatisfier;
  std::string text;  // normalized
  std::vector<std::string> fired_rules;
};

struct ConfusionResult {
  std::map<std::string, ConfusionMatrix> by_rule;
  std::vector<std::string> warnings;
};

// Per gold record of the rule's type: fired and correct -> TP, fired and
// incorrect -> FP, not fired and correct -> FN, not fired and incorrect
// -> TN. Gold records for documents outside `documents` are skipped with
// a warning. Throws EvaluationError("no gold data") when `gold` is empty.
ConfusionResult confusion_from_gold(const std::vector<ExtractedTerm>& extracted,
                                    const std::vector<RuleInfo>& rules,
                                    const std::vector<GoldLabel>& gold,
                                    const std::set<std::string>& documents);

struct ScoredExtraction {
  GoldLabel term;
  std::vector<std::pair<std::string, double>> rule_weights;  // (rule id, gated weight)
  double w_e = 0;
};

// Gated weight of each rule of the type: its MCC when it fired and the
// MCC is positive, else 0 (with `strict`, firing is not required).
std::vector<std::pair<std::string, double>> gated_rule_weights(
    const std::set<std::string>& fired_rules, const std::vector<RuleStats>& rules_for_type,
    bool strict = false);

// Mean of the gated weights over every rule of the type. Throws
// EvaluationError("no rules for type") when `rules_for_type` is empty.
double entity_score(const std::set<std::string>& fired_rules,
                    const std::vector<RuleStats>& rules_for_type, bool strict = false);

// P(score_pos > score_neg) + 0.5 P(tie) via midranks. Throws
// EvaluationError("degenerate labels") unless both classes are present.
double roc_auc(const std::vector<std::pair<double, int>>& scored);

inline constexpr double kAcceptableAuc = 0.7;

struct TypeAggregate {
  EntityType type = EntityType::kNeedSatisfier;
  int rules = 0;
  // Weight when every rule of the type fires.
  double all_fired_w_e = 0;
  double max_rule_mcc = 0;
  int scored_terms = 0;
  double w_e_mean = 0;
  std::optional<double> auc;

  bool acceptable() const { return auc && *auc >= kAcceptableAuc; }
};

struct EvaluationOptions {
  bool eq1_strict = false;
};

struct EvaluationResult {
  std::vector<RuleStats> stats;
  std::vector<TypeAggregate> aggregates;  // one per entity type
  std::vector<ScoredExtraction> scored;
  std::vector<std::string> warnings;
};

EvaluationResult evaluate(const std::vector<ExtractedTerm>& extracted,
                          const std::vector<RuleInfo>& rules,
                          const std::vector<GoldLabel>& gold,
                          const std::set<std::string>& documents,
                          const EvaluationOptions& options = {});

// Aggregates for stats without judged terms (AUC left empty).
std::vector<TypeAggregate> aggregate_without_gold(const std::vector<RuleStats>& stats);

struct StatsReport {
  std::string stats_csv;
  std::string aggregate_csv;
  std::string table;
};

StatsReport render_stats_table(const std::vector<RuleStats>& stats,
                               const std::vector<TypeAggregate>& aggregates);

// Reads `rule_id,entity_type,chain,tn,fp,fn,tp` rows.
std::vector<RuleStats> parse_stats_replay(std::string_view csv_text);

// Fixed-point formatting that never prints "-0.00".
std::string format_fixed(double value, int decimals);

}  // namespace spo

#endif  // SPO_EVALUATION_H_
