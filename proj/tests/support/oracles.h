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

#ifndef MXSEM_TESTS_SUPPORT_ORACLES_H_
#define MXSEM_TESTS_SUPPORT_ORACLES_H_

#include <cstddef>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "mxsem/corpus.h"
#include "mxsem/evaluation.h"
#include "mxsem/lexicon.h"
#include "mxsem/mention.h"
#include "mxsem/rules.h"

// Slow, direct reimplementations used to check the library. They assume
// inputs built from the generators below: words are letters, "#<digits>",
// "<digits>" or "<digits>st|nd|rd|th", with "," as the only punctuation.
namespace mxsem::testing {

// Every window of tokens compared against every variant of every concept.
std::vector<EntityMention> OracleLookup(const Sentence& sentence,
                                        const std::vector<Token>& tokens,
                                        const std::vector<LexiconConcept>& concepts);

// The whole rule cascade for one sentence, written from the rule text.
// `location_variants` holds lowercase single-space-separated variants.
Extraction OracleRules(const Sentence& sentence,
                       std::vector<EntityMention> base,
                       const std::set<std::string>& location_variants,
                       const RuleConfig& config);

// Relations as (subject span, object span) keys, for comparing extractions
// whose mention order may differ among equal keys.
using SpanKey = std::tuple<std::size_t, std::size_t, int>;
std::set<std::tuple<SpanKey, int, SpanKey>> RelationKeys(const Extraction& e);

// Token Dice computed with a word-count table.
double OracleDice(std::string_view a, std::string_view b);

// Greedy one-to-one tp by repeated best-pair scans.
std::size_t OracleGreedyTp(const std::vector<AnnotatedEntity>& gold,
                           const std::vector<AnnotatedEntity>& predicted,
                           const MatchMode& mode, SemanticType type);

// Maximum number of one-to-one pairs, by trying every assignment.
std::size_t OracleMaxMatchingTp(const std::vector<AnnotatedEntity>& gold,
                                const std::vector<AnnotatedEntity>& predicted,
                                const MatchMode& mode, SemanticType type);

struct OracleCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  double precision = 0;
  double recall = 0;
  double f1 = 0;
};

// Per-type rows keyed by type, plus the pooled row under key -1.
std::map<int, OracleCounts> OracleScore(const AnnotatedCorpus& gold,
                                        const AnnotatedCorpus& predicted,
                                        const MatchMode& mode);

// Random inputs.
struct RandomLexiconCase {
  std::vector<LexiconConcept> concepts;
  Sentence sentence;
};

std::vector<LexiconConcept> RandomConcepts(std::mt19937& rng,
                                           std::size_t max_concepts);
std::string RandomSentenceText(std::mt19937& rng, std::size_t max_tokens);
RandomLexiconCase RandomLookupCase(std::mt19937& rng);
std::string RandomPhrase(std::mt19937& rng, std::size_t max_words);
AnnotatedCorpus RandomGold(std::mt19937& rng, std::size_t sentences,
                           std::size_t max_entities);
// Predictions derived from gold by dropping, shifting, retyping, trimming
// and inventing entities.
AnnotatedCorpus RandomPrediction(std::mt19937& rng, const AnnotatedCorpus& gold,
                                 std::size_t max_entities);

// Rule cascade cases: a sentence of at most 12 tokens with at most 5 base
// mentions from a fixed lexicon, and a random k.
struct RuleCase {
  Sentence sentence;
  std::vector<EntityMention> base;
  RuleConfig config;
};

const std::string& RuleCaseLexiconTsv();
std::set<std::string> LocationVariants(const CompiledLexicon& lexicon);
RuleCase RandomRuleCase(std::mt19937& rng, const CompiledLexicon& lexicon);

// Mentions compared as multisets, relations as span-keyed sets.
bool SameExtraction(const Extraction& a, const Extraction& b);

}  // namespace mxsem::testing

#endif  // MXSEM_TESTS_SUPPORT_ORACLES_H_
