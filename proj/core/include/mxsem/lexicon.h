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

#ifndef MXSEM_LEXICON_H_
#define MXSEM_LEXICON_H_

#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mxsem/corpus.h"
#include "mxsem/mention.h"

namespace mxsem {

// A dictionary term: a canonical URI plus every surface that names it.
struct LexiconConcept {
  std::string canonical_uri;
  SemanticType sem_type = SemanticType::kComponent;
  std::string preferred_label;
  std::vector<std::string> variants;  // includes the preferred label

  bool operator==(const LexiconConcept&) const = default;
};

// Lowercased, whitespace-collapsed token sequence used as the match key.
std::vector<std::string> NormalizeVariant(std::string_view variant);
std::string NormalizedKey(std::string_view variant);

// Immutable token-sequence matcher over a concept list. Build it with
// CompileLexicon; all lookups are const and thread-safe.
class CompiledLexicon {
 public:
  CompiledLexicon() = default;

  std::span<const LexiconConcept> concepts() const { return concepts_; }
  bool empty() const { return concepts_.empty(); }
  const LexiconConcept* Find(std::string_view canonical_uri) const;

  // Concepts having a variant equal to the token sequence. Tokens must
  // already be lowercased.
  std::vector<const LexiconConcept*> Match(
      std::span<const std::string> normalized_tokens) const;

  // Every (token count, concept) whose variant is a prefix of `tokens`,
  // shortest first. Tokens must already be lowercased.
  std::vector<std::pair<std::size_t, const LexiconConcept*>> MatchPrefixes(
      std::span<const std::string> normalized_tokens) const;

  // True when `text` normalizes to a variant of some concept of `type`.
  bool HasVariant(std::string_view text, SemanticType type) const;

  std::size_t max_variant_tokens() const { return max_variant_tokens_; }

  // Writes the canonical text form: the source line format with concepts
  // sorted by URI and variants normalized and sorted.
  void WriteCanonical(std::ostream& out) const;

 private:
  friend CompiledLexicon CompileLexicon(std::vector<LexiconConcept> concepts);

  struct Node {
    std::map<std::string, std::uint32_t, std::less<>> children;
    std::vector<std::uint32_t> concepts;
  };

  // Returns the node reached by `tokens`, or nullptr.
  const Node* Walk(std::span<const std::string> tokens) const;

  std::vector<LexiconConcept> concepts_;  // sorted by canonical_uri
  std::vector<Node> nodes_{Node{}};       // nodes_[0] is the root
  std::size_t max_variant_tokens_ = 0;
};

// Validates and indexes concepts. Throws ValidationError listing every
// problem: duplicate URIs, empty or repeated variants, a preferred label
// missing from its variants, Ordinal concepts, and one variant naming two
// concepts of the same type. The same variant under different types is
// legal ambiguity.
CompiledLexicon CompileLexicon(std::vector<LexiconConcept> concepts);

// Reads the tab-separated source format:
//   TYPE<TAB>URI<TAB>preferred_label[<TAB>variant]...
// '#' lines are comments. The preferred label is added to the variants and
// repeated variants are folded. Throws ValidationError with one
// "line N: ..." entry per bad line.
std::vector<LexiconConcept> ParseLexicon(std::istream& in);

// Every token-aligned match of every variant, including nested and
// overlapping ones, sorted by MentionLess. Provenance is kBase.
std::vector<EntityMention> LookupAll(const Sentence& sentence,
                                     std::span<const Token> tokens,
                                     const CompiledLexicon& lexicon);

}  // namespace mxsem

#endif  // MXSEM_LEXICON_H_
