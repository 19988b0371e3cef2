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

#ifndef MXSEM_CORPUS_H_
#define MXSEM_CORPUS_H_

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace mxsem {

// One free-text maintenance log entry.
struct MaintenanceRecordDoc {
  std::string record_id;
  std::string asset_id;
  std::string date_performed;  // ISO-8601, passed through verbatim
  std::string text;

  bool operator==(const MaintenanceRecordDoc&) const = default;
};

// A sentence of a record paragraph. Offsets are scalar-value offsets into
// the parent paragraph, end exclusive.
struct Sentence {
  std::string parent_record_id;
  std::size_t index = 0;
  std::string text;
  std::size_t start_offset = 0;
  std::size_t end_offset = 0;

  bool operator==(const Sentence&) const = default;
};

// Offsets are within the sentence, end exclusive.
struct Token {
  std::string text;
  std::size_t start = 0;
  std::size_t end = 0;

  bool operator==(const Token&) const = default;
};

// Lowercase tokens whose trailing period is part of the word, not a
// sentence terminator.
inline constexpr std::array<std::string_view, 3> kAbbreviations = {
    "no.", "ref.", "apprx."};

bool IsAbbreviation(std::string_view token);

// Splits on '.', ';', '!', '?' followed by whitespace or end of text, and on
// newlines. A terminator stays with the sentence it ends; surrounding
// whitespace is trimmed. Periods ending a known abbreviation or sitting
// between digits do not split. Whitespace-only input yields no sentences.
std::vector<Sentence> SplitSentences(std::string_view paragraph,
                                     std::string_view record_id = {});

// Maximal runs of letters and digits. '#', '/', '.', '-' join a run when
// they lead into or sit between alphanumerics ("#4", "r/h", "3.5"); a
// trailing period joins only when it completes an abbreviation ("no.").
// Every other non-space character is a token of its own.
std::vector<Token> Tokenize(std::string_view sentence_text);

}  // namespace mxsem

#endif  // MXSEM_CORPUS_H_
