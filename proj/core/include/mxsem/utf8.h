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

#ifndef MXSEM_UTF8_H_
#define MXSEM_UTF8_H_

#include <cstddef>
#include <string>
#include <string_view>

// Helpers for treating UTF-8 text as a sequence of Unicode scalar values.
// Every offset in the public API counts scalar values, never bytes.
namespace mxsem::utf8 {

// Malformed byte sequences decode to U+FFFD, one per offending byte.
std::u32string Decode(std::string_view text);
std::string Encode(std::u32string_view text);
std::string Encode(char32_t c);

// Number of scalar values in `text`.
std::size_t Length(std::string_view text);

// Substring [start, end) in scalar-value offsets; clamps to the text length.
std::string Slice(std::string_view text, std::size_t start, std::size_t end);

bool IsSpace(char32_t c);
// Letters and digits. Non-ASCII scalars that are not whitespace count as
// letters; there is no Unicode property table.
bool IsAlnum(char32_t c);
bool IsDigit(char32_t c);

// ASCII-only case folding; other scalars pass through.
char32_t ToLower(char32_t c);
std::string ToLower(std::string_view text);

// Trims and collapses every internal whitespace run to one ASCII space.
std::string CollapseWhitespace(std::string_view text);

}  // namespace mxsem::utf8

#endif  // MXSEM_UTF8_H_
