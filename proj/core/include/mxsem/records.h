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

#ifndef MXSEM_RECORDS_H_
#define MXSEM_RECORDS_H_

#include <cstddef>
#include <istream>
#include <string_view>
#include <vector>

#include "mxsem/corpus.h"
#include "mxsem/error.h"

namespace mxsem {

// Parses one JSON Lines record object. Requires string "record_id" and
// non-blank string "text"; "asset_id" and "date" default to empty. Unknown
// keys are ignored. Throws ParseError naming `line_number`.
MaintenanceRecordDoc ParseRecordLine(std::string_view line,
                                     std::size_t line_number);

struct RecordBatch {
  std::vector<MaintenanceRecordDoc> records;
  std::vector<ParseError> errors;  // one per skipped line
};

// Reads a whole records file, skipping blank lines. Malformed lines and
// repeated record ids are reported in `errors` and left out of `records`.
RecordBatch ReadRecords(std::istream& in);

// Like ReadRecords but throws the first error.
std::vector<MaintenanceRecordDoc> ReadRecordsOrThrow(std::istream& in);

}  // namespace mxsem

#endif  // MXSEM_RECORDS_H_
