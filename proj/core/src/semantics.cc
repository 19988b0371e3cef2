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

#include "mxsem/semantics.h"

#include <algorithm>
#include <cstdio>
#include <regex>

#include "json.hpp"
#include "mxsem/utf8.h"

namespace mxsem {
namespace {

constexpr std::string_view kRdfType =
    "<http://www.w3.org/1999/02/22-rdf-syntax-ns#type>";
constexpr std::string_view kXsd = "http://www.w3.org/2001/XMLSchema#";

std::string Iri(std::string_view local) {
  return "<" + std::string(kMxNamespace) + std::string(local) + ">";
}

std::string Literal(std::string_view value) {
  return "\"" + EscapeLiteral(value) + "\"";
}

std::string TypedLiteral(std::string_view value, std::string_view xsd_type) {
  return Literal(value) + "^^<" + std::string(kXsd) + std::string(xsd_type) + ">";
}

// xsd:dateTime or xsd:date when the lexical form fits, else a plain literal.
std::string DateLiteral(const std::string& value) {
  static const std::regex kDateTime(
      R"(-?\d{4,}-\d{2}-\d{2}T\d{2}:\d{2}:\d{2}(\.\d+)?(Z|[+-]\d{2}:\d{2})?)");
  static const std::regex kDate(R"(-?\d{4,}-\d{2}-\d{2}(Z|[+-]\d{2}:\d{2})?)");
  if (std::regex_match(value, kDateTime)) return TypedLiteral(value, "dateTime");
  if (std::regex_match(value, kDate)) return TypedLiteral(value, "date");
  return Literal(value);
}

std::string Triple(const std::string& s, std::string_view p, const std::string& o) {
  return s + " " + std::string(p) + " " + o + " .";
}

}  // namespace

std::vector<MaintenanceActivityInstance> BuildActivities(
    std::size_t sentence_index, const std::vector<EntityMention>& mentions,
    const std::vector<Relation>& relations) {
  std::vector<MaintenanceActivityInstance> out;
  for (std::size_t i = 0; i < mentions.size(); ++i) {
    const EntityMention& m = mentions[i];
    if (m.sem_type != SemanticType::kComponent) continue;
    MaintenanceActivityInstance activity;
    activity.source_sentence_index = sentence_index;
    ComponentOrPartInstance& c = activity.component;
    c.name = m.surface;
    c.ordinal = m.ordinal;
    c.location = m.location;
    for (const Relation& r : relations) {
      if (r.subject != i || r.object >= mentions.size()) continue;
      const std::string value = utf8::ToLower(mentions[r.object].surface);
      auto& list = r.predicate == Predicate::kHasAssociatedAction ? c.actions
                                                                  : c.observations;
      if (std::find(list.begin(), list.end(), value) == list.end()) {
        list.push_back(value);
      }
    }
    out.push_back(std::move(activity));
  }
  return out;
}

std::string EncodeIriSegment(std::string_view segment) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (char ch : segment) {
    const auto b = static_cast<unsigned char>(ch);
    const bool unreserved = (b >= 'A' && b <= 'Z') || (b >= 'a' && b <= 'z') ||
                            (b >= '0' && b <= '9') || b == '-' || b == '.' ||
                            b == '_' || b == '~';
    if (unreserved) {
      out.push_back(ch);
    } else {
      out.push_back('%');
      out.push_back(kHex[b >> 4]);
      out.push_back(kHex[b & 0xF]);
    }
  }
  return out;
}

std::string DecodeIriSegment(std::string_view segment) {
  auto hex = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    return -1;
  };
  std::string out;
  for (std::size_t i = 0; i < segment.size(); ++i) {
    if (segment[i] == '%' && i + 2 < segment.size() && hex(segment[i + 1]) >= 0 &&
        hex(segment[i + 2]) >= 0) {
      out.push_back(static_cast<char>(hex(segment[i + 1]) * 16 + hex(segment[i + 2])));
      i += 2;
    } else {
      out.push_back(segment[i]);
    }
  }
  return out;
}

std::string EscapeLiteral(std::string_view value) {
  std::string out;
  for (char ch : value) {
    switch (ch) {
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20 || ch == 0x7F) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04X", static_cast<unsigned char>(ch));
          out += buf;
        } else {
          out.push_back(ch);
        }
    }
  }
  return out;
}

std::string SerializeNTriples(const MaintenanceRecordInstance& record) {
  const std::string rid = EncodeIriSegment(record.record_id);
  const std::string record_iri = Iri("record/" + rid);
  std::vector<std::string> lines;
  lines.push_back(Triple(record_iri, kRdfType, Iri("MaintenanceRecord")));
  lines.push_back(Triple(record_iri, Iri("recordId"), Literal(record.record_id)));
  lines.push_back(Triple(record_iri, Iri("assetId"), Literal(record.asset_id)));
  lines.push_back(Triple(record_iri, Iri("dateActivityPerformed"),
                         DateLiteral(record.date_performed)));

  for (std::size_t n = 0; n < record.activities.size(); ++n) {
    const ComponentOrPartInstance& c = record.activities[n].component;
    const std::string suffix = rid + "/" + std::to_string(n);
    const std::string activity = Iri("activity/" + suffix);
    const std::string component = Iri("component/" + suffix);
    lines.push_back(Triple(record_iri, Iri("maintenanceActivity"), activity));
    lines.push_back(Triple(activity, kRdfType, Iri("MaintenanceActivity")));
    lines.push_back(Triple(activity, Iri("hasAssociatedComponentOrPart"), component));
    lines.push_back(Triple(component, kRdfType, Iri("ComponentOrPart")));
    lines.push_back(Triple(component, Iri("hasName"), Literal(c.name)));
    if (c.ordinal) {
      lines.push_back(Triple(component, Iri("hasAssociatedOrdinal"),
                             TypedLiteral(std::to_string(*c.ordinal), "integer")));
    }
    if (c.location) {
      lines.push_back(
          Triple(component, Iri("hasAssociatedLocation"), Literal(*c.location)));
    }
    for (const std::string& o : c.observations) {
      lines.push_back(Triple(component, Iri("hasAssociatedObservation"), Literal(o)));
    }
    for (const std::string& a : c.actions) {
      lines.push_back(Triple(component, Iri("hasAssociatedAction"), Literal(a)));
    }
  }

  std::sort(lines.begin(), lines.end());
  lines.erase(std::unique(lines.begin(), lines.end()), lines.end());
  std::string out;
  for (const std::string& l : lines) {
    out += l;
    out += '\n';
  }
  return out;
}

std::string SerializeJsonLine(const MaintenanceRecordInstance& record) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["record_id"] = record.record_id;
  doc["asset_id"] = record.asset_id;
  doc["date"] = record.date_performed;
  doc["activities"] = ordered_json::array();
  for (const MaintenanceActivityInstance& a : record.activities) {
    const ComponentOrPartInstance& c = a.component;
    ordered_json item;
    item["name"] = c.name;
    item["ordinal"] = c.ordinal ? ordered_json(*c.ordinal) : ordered_json(nullptr);
    item["location"] = c.location ? ordered_json(*c.location) : ordered_json(nullptr);
    item["observations"] = c.observations;
    item["actions"] = c.actions;
    item["sentence_index"] = a.source_sentence_index;
    doc["activities"].push_back(std::move(item));
  }
  return doc.dump();
}

}  // namespace mxsem
