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

#include "mxsem/corpus.h"

#include <algorithm>

#include "mxsem/utf8.h"

namespace mxsem {
namespace {

bool IsConnector(char32_t c) {
  return c == U'#' || c == U'/' || c == U'.' || c == U'-';
}

bool IsTerminator(char32_t c) {
  return c == U'.' || c == U';' || c == U'!' || c == U'?';
}

// True when the period at `pos` ends an abbreviation token.
bool EndsAbbreviation(const std::u32string& text, std::size_t pos) {
  std::size_t begin = pos;
  while (begin > 0 && !utf8::IsSpace(text[begin - 1])) --begin;
  const std::string token =
      utf8::Encode(std::u32string_view(text).substr(begin, pos + 1 - begin));
  return IsAbbreviation(token);
}

}  // namespace

bool IsAbbreviation(std::string_view token) {
  const std::string lower = utf8::ToLower(token);
  return std::find(kAbbreviations.begin(), kAbbreviations.end(), lower) !=
         kAbbreviations.end();
}

std::vector<Sentence> SplitSentences(std::string_view paragraph,
                                     std::string_view record_id) {
  const std::u32string text = utf8::Decode(paragraph);
  const std::size_t n = text.size();
  std::vector<Sentence> sentences;

  auto emit = [&](std::size_t begin, std::size_t end) {
    while (begin < end && utf8::IsSpace(text[begin])) ++begin;
    while (end > begin && utf8::IsSpace(text[end - 1])) --end;
    if (begin == end) return;
    Sentence s;
    s.parent_record_id = std::string(record_id);
    s.index = sentences.size();
    s.text = utf8::Encode(std::u32string_view(text).substr(begin, end - begin));
    s.start_offset = begin;
    s.end_offset = end;
    sentences.push_back(std::move(s));
  };

  std::size_t segment = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const char32_t c = text[i];
    if (c == U'\n') {
      emit(segment, i);
      segment = i + 1;
      continue;
    }
    if (!IsTerminator(c)) continue;
    if (i + 1 < n && !utf8::IsSpace(text[i + 1])) continue;
    if (c == U'.') {
      const bool in_number = i > 0 && i + 1 < n && utf8::IsDigit(text[i - 1]) &&
                             utf8::IsDigit(text[i + 1]);
      if (in_number || EndsAbbreviation(text, i)) continue;
    }
    emit(segment, i + 1);
    segment = i + 1;
  }
  emit(segment, n);
  return sentences;
}

std::vector<Token> Tokenize(std::string_view sentence_text) {
  const std::u32string text = utf8::Decode(sentence_text);
  const std::size_t n = text.size();
  std::vector<Token> tokens;

  auto emit = [&](std::size_t begin, std::size_t end) {
    tokens.push_back(
        {utf8::Encode(std::u32string_view(text).substr(begin, end - begin)),
         begin, end});
  };

  std::size_t i = 0;
  while (i < n) {
    const char32_t c = text[i];
    if (utf8::IsSpace(c)) {
      ++i;
      continue;
    }
    if (!utf8::IsAlnum(c) && !IsConnector(c)) {
      emit(i, i + 1);
      ++i;
      continue;
    }
    std::size_t run_end = i;
    while (run_end < n &&
           (utf8::IsAlnum(text[run_end]) || IsConnector(text[run_end]))) {
      ++run_end;
    }
    std::size_t last_alnum = run_end;
    for (std::size_t k = run_end; k > i; --k) {
      if (utf8::IsAlnum(text[k - 1])) {
        last_alnum = k - 1;
        break;
      }
    }
    if (last_alnum == run_end) {
      // Connectors only: each is punctuation.
      for (std::size_t k = i; k < run_end; ++k) emit(k, k + 1);
      i = run_end;
      continue;
    }
    std::size_t token_end = last_alnum + 1;
    if (token_end < run_end && text[token_end] == U'.' &&
        IsAbbreviation(utf8::Encode(
            std::u32string_view(text).substr(i, token_end + 1 - i)))) {
      ++token_end;
    }
    emit(i, token_end);
    for (std::size_t k = token_end; k < run_end; ++k) emit(k, k + 1);
    i = run_end;
  }
  return tokens;
}

}  // namespace mxsem
