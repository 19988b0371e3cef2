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

#include "mxsem/mention.h"

#include <array>
#include <utility>

namespace mxsem {
namespace {

constexpr std::array<std::pair<SemanticType, std::string_view>, 5> kTypeNames =
    {{{SemanticType::kComponent, "Component"},
      {SemanticType::kAction, "Action"},
      {SemanticType::kObservation, "Observation"},
      {SemanticType::kLocation, "Location"},
      {SemanticType::kOrdinal, "Ordinal"}}};

constexpr std::array<std::pair<Provenance, std::string_view>, 3>
    kProvenanceNames = {{{Provenance::kBase, "base"},
                         {Provenance::kRule, "rule"},
                         {Provenance::kQa, "qa"}}};

}  // namespace

std::string_view ToString(SemanticType type) {
  for (const auto& [t, name] : kTypeNames) {
    if (t == type) return name;
  }
  return "Unknown";
}

std::optional<SemanticType> ParseSemanticType(std::string_view name) {
  for (const auto& [t, n] : kTypeNames) {
    if (n == name) return t;
  }
  return std::nullopt;
}

std::string_view ToString(Provenance provenance) {
  for (const auto& [p, name] : kProvenanceNames) {
    if (p == provenance) return name;
  }
  return "unknown";
}

std::optional<Provenance> ParseProvenance(std::string_view name) {
  for (const auto& [p, n] : kProvenanceNames) {
    if (n == name) return p;
  }
  return std::nullopt;
}

std::string_view ToString(Predicate predicate) {
  return predicate == Predicate::kHasAssociatedAction
             ? "hasAssociatedAction"
             : "hasAssociatedObservation";
}

bool MentionLess(const EntityMention& a, const EntityMention& b) {
  if (a.start != b.start) return a.start < b.start;
  if (a.end != b.end) return a.end > b.end;
  if (a.sem_type != b.sem_type) return a.sem_type < b.sem_type;
  if (a.canonical_uri != b.canonical_uri) return a.canonical_uri < b.canonical_uri;
  return a.surface < b.surface;
}

}  // namespace mxsem
