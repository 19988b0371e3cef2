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

#ifndef MXSEM_MENTION_H_
#define MXSEM_MENTION_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mxsem {

// Serialized names are exactly the enumerator names without the 'k'.
enum class SemanticType { kComponent, kAction, kObservation, kLocation, kOrdinal };

std::string_view ToString(SemanticType type);
std::optional<SemanticType> ParseSemanticType(std::string_view name);

enum class Provenance { kBase, kRule, kQa };

std::string_view ToString(Provenance provenance);
std::optional<Provenance> ParseProvenance(std::string_view name);

// A typed span of sentence text. Offsets are scalar values, end exclusive.
// Rule transformations may rewrite `surface`, but the span always covers
// whatever text the mention absorbed.
struct EntityMention {
  std::string surface;
  std::size_t start = 0;
  std::size_t end = 0;
  SemanticType sem_type = SemanticType::kComponent;
  std::optional<std::string> canonical_uri;
  std::optional<std::string> context_note;  // "(motor)", parentheses kept
  Provenance provenance = Provenance::kBase;
  // Filled on Component mentions by ordinal and location post-processing.
  std::optional<int> ordinal;
  std::optional<std::string> location;

  std::size_t length() const { return end - start; }
  bool operator==(const EntityMention&) const = default;
};

// Orders by (start, -length, type, uri, surface).
bool MentionLess(const EntityMention& a, const EntityMention& b);

enum class Predicate { kHasAssociatedAction, kHasAssociatedObservation };

std::string_view ToString(Predicate predicate);

// Links a Component mention to an Action or Observation mention. Both ends
// are indices into the mention list the relation was extracted from.
struct Relation {
  std::size_t subject = 0;
  Predicate predicate = Predicate::kHasAssociatedAction;
  std::size_t object = 0;

  auto operator<=>(const Relation&) const = default;
};

// Extraction result for one sentence. Relation indices point into
// `mentions`.
struct Extraction {
  std::vector<EntityMention> mentions;
  std::vector<Relation> relations;

  bool operator==(const Extraction&) const = default;
};

}  // namespace mxsem

#endif  // MXSEM_MENTION_H_
