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

#ifndef MXSEM_SEMANTICS_H_
#define MXSEM_SEMANTICS_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mxsem/mention.h"

namespace mxsem {

// Vocabulary namespace for classes, properties and minted instance IRIs.
inline constexpr std::string_view kMxNamespace = "http://mxrecords/";

struct ComponentOrPartInstance {
  std::string name;                     // hasName
  std::optional<int> ordinal;           // hasAssociatedOrdinal
  std::optional<std::string> location;  // hasAssociatedLocation
  std::vector<std::string> observations;  // hasAssociatedObservation
  std::vector<std::string> actions;       // hasAssociatedAction

  bool operator==(const ComponentOrPartInstance&) const = default;
};

struct MaintenanceActivityInstance {
  ComponentOrPartInstance component;  // hasAssociatedComponentOrPart
  std::size_t source_sentence_index = 0;

  bool operator==(const MaintenanceActivityInstance&) const = default;
};

struct MaintenanceRecordInstance {
  std::string record_id;
  std::string asset_id;
  std::string date_performed;
  std::vector<MaintenanceActivityInstance> activities;

  bool operator==(const MaintenanceRecordInstance&) const = default;
};

// One activity per Component mention, in mention order. Observations and
// actions are the lowercased surfaces of the component's relation objects,
// in relation order without repeats.
std::vector<MaintenanceActivityInstance> BuildActivities(
    std::size_t sentence_index, const std::vector<EntityMention>& mentions,
    const std::vector<Relation>& relations);

// Percent-encodes every byte outside the IRI unreserved set.
std::string EncodeIriSegment(std::string_view segment);
std::string DecodeIriSegment(std::string_view segment);

// N-Triples literal body escaping (without the surrounding quotes).
std::string EscapeLiteral(std::string_view value);

// One record as N-Triples, lines sorted bytewise, each ending in '\n'.
// Instances are minted as record/<id>, activity/<id>/<n> and
// component/<id>/<n> under kMxNamespace, n counting activities from 0.
std::string SerializeNTriples(const MaintenanceRecordInstance& record);

// The same instance as one JSON object on a single line (no newline):
// {"record_id","asset_id","date","activities":[{"name","ordinal",
// "location","observations","actions"}]}; absent values are null.
std::string SerializeJsonLine(const MaintenanceRecordInstance& record);

}  // namespace mxsem

#endif  // MXSEM_SEMANTICS_H_
