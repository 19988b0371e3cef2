// Copyright 2026 The mxsem Authors.
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

#ifndef MXSEM_EVALUATION_H_
#define MXSEM_EVALUATION_H_

#include <array>
#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mxsem/mention.h"

namespace mxsem {

enum class DiceKind {
  kTokens,       // lowercase whitespace-token multisets
  kCharBigrams,  // lowercase character-bigram multisets
};

// Sørensen–Dice coefficient 2|A∩B| / (|A|+|B|) over multisets. Two empty
// multisets score 1.
double Dice(std::string_view a, std::string_view b,
            DiceKind kind = DiceKind::kTokens);

// Surface used for fuzzy comparison: parentheses removed, so a context
// note "(motor) brake" compares as "motor brake".
std::string ComparisonText(std::string_view surface);

struct AnnotatedEntity {
  std::string text;
  std::size_t start = 0;
  std::size_t end = 0;
  SemanticType sem_type = SemanticType::kComponent;
  std::optional<std::string> context_note;
  std::optional<Provenance> provenance;

  bool operator==(const AnnotatedEntity&) const = default;
};

// Gold and predicted files share this shape.
struct AnnotatedSentence {
  std::string sentence_id;
  std::vector<AnnotatedEntity> entities;
};

using AnnotatedCorpus = std::vector<AnnotatedSentence>;

// JSON Lines: {"sentence_id", "entities": [{"text", "start", "end", "type",
// "context_note"?, "provenance"?}]}. Extra keys are ignored. Throws
// ParseError for malformed lines, bad spans, duplicate entities within a
// sentence, or repeated sentence ids.
AnnotatedCorpus ReadAnnotations(std::istream& in);

struct MatchMode {
  enum class Kind { kStrict, kFuzzy };
  Kind kind = Kind::kStrict;
  double threshold = 1.0;  // fuzzy only
  DiceKind dice = DiceKind::kTokens;

  static MatchMode Strict() { return {}; }
  static MatchMode Fuzzy(double threshold, DiceKind dice = DiceKind::kTokens) {
    return {Kind::kFuzzy, threshold, dice};
  }
  std::string Describe() const;
};

struct MatchResult {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (gold, predicted)
  std::vector<std::size_t> unmatched_gold;
  std::vector<std::size_t> unmatched_predicted;
};

// One-to-one assignment. Strict pairs need equal type and span; fuzzy pairs
// need equal type and Dice >= threshold, where equal spans count as Dice 1.
// Candidates are taken greedily by descending Dice, then ascending gold
// start (then gold and predicted index).
MatchResult MatchEntities(std::span<const AnnotatedEntity> gold,
                          std::span<const AnnotatedEntity> predicted,
                          const MatchMode& mode);

struct Counts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  // Fills precision/recall/f1 from tp/fp/fn; zero denominators give 0.
  void Finish();
};

inline constexpr std::array<SemanticType, 5> kAllTypes = {
    SemanticType::kComponent, SemanticType::kAction, SemanticType::kObservation,
    SemanticType::kLocation, SemanticType::kOrdinal};

struct EvalReport {
  MatchMode mode;
  std::map<SemanticType, Counts> per_type;  // always has all five types
  Counts overall;                           // micro-average
};

// Scores every gold sentence; a gold sentence missing from `predicted`
// counts as predicting nothing. Throws ValidationError when `predicted`
// names a sentence id that gold lacks.
EvalReport Score(const AnnotatedCorpus& gold, const AnnotatedCorpus& predicted,
                 const MatchMode& mode);

// One fuzzy report per threshold, in the given order, then one strict
// report. Throws std::invalid_argument for thresholds outside [0, 1].
std::vector<EvalReport> Sweep(const AnnotatedCorpus& gold,
                              const AnnotatedCorpus& predicted,
                              std::span<const double> thresholds,
                              DiceKind dice = DiceKind::kTokens);

std::string ReportToJson(const EvalReport& report);
std::string ReportsToJson(std::span<const EvalReport> reports);
// Fixed-width text table: one row per type plus "All".
std::string ReportTable(const EvalReport& report);

}  // namespace mxsem

#endif  // MXSEM_EVALUATION_H_
