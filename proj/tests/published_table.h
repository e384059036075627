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

// Published per-rule confusion counts with their reported F-score and
// MCC (two decimals).

#ifndef SPO_TESTS_PUBLISHED_TABLE_H_
#define SPO_TESTS_PUBLISHED_TABLE_H_

#include <vector>

namespace spo::published {

struct Row {
  const char* rule;
  const char* type;
  bool chain;
  long tn, fp, fn, tp;
  double f_score;
  double mcc;
};

inline const std::vector<Row>& rows() {
  static const std::vector<Row> kRows = {
    {"o-47", "ClientCharacteristic", true, 28, 240, 444, 2605, 0.88, -0.03},
    {"p-34", "ClientDescription", false, 32, 0, 26, 16, 0.55, 0.46},
    {"o-42", "ClientDescription", true, 31, 1, 42, 0, 0.0, -0.13},
    {"o-43", "ClientDescription", true, 31, 1, 42, 0, 0.0, -0.13},
    {"o-20", "DesiredState", false, 1, 44, 3, 40, 0.63, -0.11},
    {"o-8", "Need", false, 36, 7, 69, 6, 0.14, -0.13},
    {"o-9", "Need", false, 10, 33, 28, 47, 0.61, -0.14},
    {"o-32", "NeedSatisfierDescription", false, 5, 0, 62, 21, 0.4, 0.14},
    {"o-18", "NeedSatisfierDescription", false, 3, 2, 31, 52, 0.76, 0.11},
    {"s-35", "ProgramName", false, 39, 18, 52, 219, 0.86, 0.42},
    {"s-44", "ProgramName", true, 55, 2, 209, 62, 0.37, 0.19},
    {"s-45", "ProgramName", true, 24, 33, 247, 24, 0.15, -0.49},
    {"o-28", "RequiredCriteria", false, 3, 33, 41, 98, 0.73, -0.2},
    {"o-44", "NeedSatisfier", true, 2913, 74, 14996, 2979, 0.28, 0.14},
    {"s-46", "NeedSatisfier", true, 2896, 91, 15042, 2933, 0.28, 0.13},
    {"o-36", "NeedSatisfier", false, 2701, 286, 13846, 4129, 0.37, 0.11},
    {"o-2", "NeedSatisfier", false, 2916, 71, 16862, 1113, 0.12, 0.06},
    {"o-1", "NeedSatisfier", false, 2987, 0, 17950, 25, 0.0, 0.01},
    {"o-3", "NeedSatisfier", false, 2874, 113, 17301, 674, 0.07, 0.0},
    {"o-31", "NeedSatisfier", false, 2979, 8, 17931, 44, 0.0, 0.0},
    {"o-16", "NeedSatisfier", false, 2962, 25, 17865, 110, 0.01, -0.01},
    {"o-25", "NeedSatisfier", false, 2981, 6, 17958, 17, 0.0, -0.01},
    {"o-11", "NeedSatisfier", false, 2919, 68, 17847, 128, 0.01, -0.06},
    {"s-12", "NeedSatisfier", false, 2856, 131, 17747, 228, 0.02, -0.08},
    {"o-13", "NeedSatisfier", false, 1738, 1249, 13800, 4175, 0.36, -0.15},
    {"o-22", "NeedSatisfier", false, 2628, 359, 17442, 533, 0.06, -0.16},
    {"o-23", "ServiceDescription", false, 20, 0, 35, 0, 0.0, 0.0},
    {"o-24", "ServiceDescription", false, 20, 0, 35, 0, 0.0, 0.0},
    {"o-33", "ServiceDescription", false, 20, 0, 35, 0, 0.0, 0.0},
    {"o-45", "ServiceDescription", true, 20, 0, 35, 0, 0.0, 0.0},
    {"o-15", "ServiceDescription", false, 13, 7, 25, 10, 0.38, -0.07},
    {"s-41", "ServiceDescription", true, 19, 1, 35, 0, 0.0, -0.18},
    {"s-43", "ServiceDescription", true, 19, 1, 35, 0, 0.0, -0.18},
    {"o-19", "ServiceDescription", false, 14, 6, 30, 5, 0.22, -0.19},
  };
  return kRows;
}

inline constexpr double kTolerance = 0.005;

}  // namespace spo::published

#endif  // SPO_TESTS_PUBLISHED_TABLE_H_
