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

#include "mxsem/records.h"

#include <set>
#include <string>

#include "json.hpp"
#include "mxsem/utf8.h"

namespace mxsem {

using nlohmann::json;

MaintenanceRecordDoc ParseRecordLine(std::string_view line,
                                     std::size_t line_number) {
  json obj;
  try {
    obj = json::parse(line);
  } catch (const json::parse_error& e) {
    throw ParseError(line_number, std::string("invalid JSON: ") + e.what());
  }
  if (!obj.is_object()) throw ParseError(line_number, "expected a JSON object");

  auto required = [&](const char* key) -> std::string {
    auto it = obj.find(key);
    if (it == obj.end()) {
      throw ParseError(line_number, std::string("missing \"") + key + "\"");
    }
    if (!it->is_string()) {
      throw ParseError(line_number,
                       std::string("\"") + key + "\" must be a string");
    }
    return it->get<std::string>();
  };
  auto optional = [&](const char* key) -> std::string {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return {};
    if (!it->is_string()) {
      throw ParseError(line_number,
                       std::string("\"") + key + "\" must be a string");
    }
    return it->get<std::string>();
  };

  MaintenanceRecordDoc doc;
  doc.record_id = required("record_id");
  doc.text = required("text");
  doc.asset_id = optional("asset_id");
  doc.date_performed = optional("date");
  if (doc.record_id.empty()) throw ParseError(line_number, "empty record_id");
  if (utf8::CollapseWhitespace(doc.text).empty()) {
    throw ParseError(line_number, "blank text");
  }
  return doc;
}

RecordBatch ReadRecords(std::istream& in) {
  RecordBatch batch;
  std::set<std::string> seen;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (utf8::CollapseWhitespace(line).empty()) continue;
    try {
      MaintenanceRecordDoc doc = ParseRecordLine(line, line_number);
      if (!seen.insert(doc.record_id).second) {
        throw ParseError(line_number,
                         "duplicate record_id \"" + doc.record_id + "\"");
      }
      batch.records.push_back(std::move(doc));
    } catch (const ParseError& e) {
      batch.errors.push_back(e);
    }
  }
  return batch;
}

std::vector<MaintenanceRecordDoc> ReadRecordsOrThrow(std::istream& in) {
  RecordBatch batch = ReadRecords(in);
  if (!batch.errors.empty()) throw batch.errors.front();
  return std::move(batch.records);
}

}  // namespace mxsem
