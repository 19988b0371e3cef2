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

#ifndef MXSEM_RULES_H_
#define MXSEM_RULES_H_

#include <cstddef>
#include <istream>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "mxsem/corpus.h"
#include "mxsem/lexicon.h"
#include "mxsem/mention.h"

namespace mxsem {

// A regular expression (ECMAScript, case-insensitive) whose first capture
// group holds the ordinal digits.
struct OrdinalPattern {
  std::string name;
  std::string regex;
};

std::set<std::string, std::less<>> DefaultStopWords();
std::vector<OrdinalPattern> DefaultOrdinalPatterns();

struct RuleConfig {
  // Maximum character gap between two mentions for context capture and
  // relation linking.
  std::size_t k = 10;
  std::set<std::string, std::less<>> stop_words = DefaultStopWords();
  std::vector<OrdinalPattern> ordinal_patterns = DefaultOrdinalPatterns();

  bool IsStopWord(std::string_view token) const;
};

// Reads {"k": int, "stop_words": [string...], "ordinal_patterns":
// [{"name": s, "regex": s}...]}; absent fields keep their defaults. Throws
// ParseError on malformed JSON or a negative k.
RuleConfig LoadRuleConfig(std::istream& in);

// Among mentions sharing start offset and type keeps only the longest.
// Everything else passes through in its original relative order.
std::vector<EntityMention> PruneToFinest(std::vector<EntityMention> mentions);

// Merges same-type mentions separated only by whitespace. Merging is
// transitive: each connected group collapses to one mention spanning the
// group, with surface equal to the sentence slice and provenance kRule.
// The result is a fixpoint and sorted by MentionLess.
std::vector<EntityMention> JoinSameType(std::vector<EntityMention> mentions,
                                        std::string_view sentence_text,
                                        const RuleConfig& config);

// Captures typical-part text sitting between a Component and the nearest
// Component/Action/Observation to its left, when the gap is 1..k
// characters and overlaps no other such mention. Stop words are dropped
// from the captured text; what remains is lowercased, parenthesized, stored
// as the context note and prefixed to the surface. The span grows left to
// the first non-space gap character. A gap holding only stop words extends
// the span without a note; a gap holding a punctuation-only token is a
// boundary and is not absorbed. Location mentions are ignored and pass
// through.
std::vector<EntityMention> AbsorbContextGap(std::vector<EntityMention> mentions,
                                            std::string_view sentence_text,
                                            const RuleConfig& config);

// Removes stop-word tokens from the surface outside the context note.
// Returns nullopt when nothing but stop words (and the note) remains.
std::optional<EntityMention> StripStopwords(EntityMention mention,
                                            const RuleConfig& config);

// Component-Action and Component-Observation pairs, in either textual
// order, that do not overlap and whose character gap is at most k. Sorted
// by (subject start, object start), without duplicates.
std::vector<Relation> ExtractRelations(const std::vector<EntityMention>& mentions,
                                       const RuleConfig& config);

struct OrdinalValue {
  int value = 0;
  std::size_t start = 0;  // span of the matched ordinal in the surface
  std::size_t end = 0;

  bool operator==(const OrdinalValue&) const = default;
};

struct OrdinalExtraction {
  OrdinalValue ordinal;
  std::string cleaned_surface;

  bool operator==(const OrdinalExtraction&) const = default;
};

// First (leftmost) ordinal in the surface, with the ordinal text removed
// from the cleaned surface. Values of zero are not ordinals. Values that
// overflow int are skipped with a diagnostic, as are extra ordinals after
// the first.
std::optional<OrdinalExtraction> ExtractOrdinal(
    std::string_view component_surface, const RuleConfig& config = {},
    std::vector<std::string>* diagnostics = nullptr);

struct LocationSplit {
  std::optional<std::string> location;
  std::string residual;

  bool operator==(const LocationSplit&) const = default;
};

// Splits leading and trailing runs of Location variants off a component
// surface. Leading and trailing parts are joined with one space.
LocationSplit SplitLocation(std::string_view component_surface,
                            const CompiledLexicon& lexicon);

// The whole rule pipeline for one sentence: prune, join (locations first,
// then set aside), absorb context, strip stop words, per-Component ordinal
// and location post-processing, then relations. Same-type mentions that
// share an end but not a start are both kept and reported in `diagnostics`.
Extraction ApplyRules(const Sentence& sentence,
                      std::vector<EntityMention> base_mentions,
                      const CompiledLexicon& lexicon, const RuleConfig& config,
                      std::vector<std::string>* diagnostics = nullptr);

// Ordinal extraction and location splitting applied to one Component.
// Emits the extracted Ordinal and Location mentions into `extra`, located
// within the component's span of `sentence_text`. Returns nullopt when
// the component is all location.
std::optional<EntityMention> PostProcessComponent(
    EntityMention component, std::string_view sentence_text,
    const CompiledLexicon& lexicon, const RuleConfig& config,
    std::vector<EntityMention>& extra,
    std::vector<std::string>* diagnostics = nullptr);

}  // namespace mxsem

#endif  // MXSEM_RULES_H_
