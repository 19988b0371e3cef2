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

#include <random>
#include <sstream>

#include "doctest.h"
#include "mxsem/corpus.h"
#include "mxsem/error.h"
#include "mxsem/records.h"
#include "mxsem/utf8.h"
#include "test_util.h"

namespace mxsem {
namespace {

std::vector<std::string> Texts(const std::vector<Token>& tokens) {
  std::vector<std::string> out;
  for (const auto& t : tokens) out.push_back(t.text);
  return out;
}

TEST_CASE("two sentences with exact offsets") {
  const auto s = SplitSentences("replaced gasket. ops check good.", "R1");
  REQUIRE(s.size() == 2);
  CHECK(s[0].text == "replaced gasket.");
  CHECK(s[0].start_offset == 0);
  CHECK(s[0].end_offset == 16);
  CHECK(s[1].text == "ops check good.");
  CHECK(s[1].start_offset == 17);
  // The paragraph is 32 scalar values long.
  CHECK(s[1].end_offset == 32);
  CHECK(s[1].index == 1);
  CHECK(s[1].parent_record_id == "R1");
}

TEST_CASE("no separator gives one sentence") {
  const auto s = SplitSentences("leaking");
  REQUIRE(s.size() == 1);
  CHECK(s[0].text == "leaking");
  CHECK(s[0].start_offset == 0);
  CHECK(s[0].end_offset == 7);
}

TEST_CASE("semicolon splits") {
  const auto s = SplitSentences("removed valve; installed new valve");
  REQUIRE(s.size() == 2);
  CHECK(s[0].text == "removed valve;");
  CHECK(s[1].text == "installed new valve");
  CHECK(s[1].start_offset == 15);
}

TEST_CASE("empty and blank paragraphs") {
  CHECK(SplitSentences("").empty());
  CHECK(SplitSentences("   \n\t ").empty());
}

TEST_CASE("abbreviations, numbers and newlines") {
  auto s = SplitSentences("replaced no. 3 valve. torque 3.5 in-lb ok");
  REQUIRE(s.size() == 2);
  CHECK(s[0].text == "replaced no. 3 valve.");
  CHECK(s[1].text == "torque 3.5 in-lb ok");

  s = SplitSentences("r/h otbd flap cracked\ninspected seal");
  REQUIRE(s.size() == 2);
  CHECK(s[1].start_offset == 22);

  s = SplitSentences("see ref. manual");
  CHECK(s.size() == 1);
}

TEST_CASE("run-on shorthand stays one sentence") {
  CHECK(SplitSentences("lh eng oil lkg rplcd gskt ops ck good").size() == 1);
}

TEST_CASE("tokenize examples") {
  CHECK(Texts(Tokenize("left engine #4 cylinder baffle cracked")) ==
        std::vector<std::string>{"left", "engine", "#4", "cylinder", "baffle", "cracked"});
  CHECK(Tokenize("").empty());
  CHECK(Texts(Tokenize("r/h otbd flap")) == std::vector<std::string>{"r/h", "otbd", "flap"});
  CHECK(Texts(Tokenize("no. 3 valve, leaking.")) ==
        std::vector<std::string>{"no.", "3", "valve", ",", "leaking", "."});
  CHECK(Texts(Tokenize("seal (new)")) == std::vector<std::string>{"seal", "(", "new", ")"});
}

TEST_CASE("tokenize offsets are scalar values") {
  const std::string text = "joint \xC3\xA9tanch\xC3\xA9it\xC3\xA9 ok";  // étanchéité
  const auto tokens = Tokenize(text);
  REQUIRE(tokens.size() == 3);
  CHECK(tokens[1].start == 6);
  CHECK(tokens[1].end == 16);
  CHECK(tokens[2].start == 17);
  for (const auto& t : tokens) CHECK(utf8::Slice(text, t.start, t.end) == t.text);
}

std::string RandomParagraph(std::mt19937& rng) {
  static const std::vector<std::string> pieces = {
      "valve", "leaking", ".", ";", "!", "?", "no.", "3.5", "#4", "r/h", " ", "  ", "\n",
      "\xC3\xA9t\xC3\xA9", "ref.", "-", ",", "ops", "(", ")"};
  std::string out;
  const int n = std::uniform_int_distribution<int>(0, 20)(rng);
  for (int i = 0; i < n; ++i) {
    out += pieces[std::uniform_int_distribution<std::size_t>(0, pieces.size() - 1)(rng)];
    if (std::bernoulli_distribution(0.5)(rng)) out += ' ';
  }
  return out;
}

TEST_CASE("sentence and token offset round trip") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    const std::string para = RandomParagraph(rng);
    const auto sentences = SplitSentences(para);
    CHECK(sentences == SplitSentences(para));
    std::u32string covered = utf8::Decode(para);
    std::size_t last_end = 0;
    for (std::size_t i = 0; i < sentences.size(); ++i) {
      const auto& s = sentences[i];
      CHECK(s.index == i);
      CHECK(s.start_offset >= last_end);
      CHECK(utf8::Slice(para, s.start_offset, s.end_offset) == s.text);
      last_end = s.end_offset;
      for (std::size_t c = s.start_offset; c < s.end_offset; ++c) covered[c] = U' ';
      const auto tokens = Tokenize(s.text);
      CHECK(tokens == Tokenize(s.text));
      std::size_t prev = 0;
      for (const auto& t : tokens) {
        CHECK(t.start >= prev);
        CHECK(t.start < t.end);
        CHECK(utf8::Slice(s.text, t.start, t.end) == t.text);
        CHECK(t.text.find_first_of(" \t\n") == std::string::npos);
        prev = t.end;
        // A single token tokenizes to itself.
        const auto again = Tokenize(t.text);
        if (again.size() == 1) CHECK(again[0].text == t.text);
      }
    }
    // Every non-space character sits in some sentence.
    for (char32_t c : covered) CHECK(utf8::IsSpace(c));
  }
}

TEST_CASE("record lines") {
  const auto r = ParseRecordLine(
      R"({"record_id":"R1","asset_id":"A1","date":"2021-01-02","text":"x","extra":1})", 1);
  CHECK(r.record_id == "R1");
  CHECK(r.asset_id == "A1");
  CHECK(r.date_performed == "2021-01-02");
  CHECK(r.text == "x");

  try {
    ParseRecordLine(R"({"record_id":"R1"})", 7);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 7);
    CHECK(std::string(e.what()).find("line 7") != std::string::npos);
  }
  CHECK_THROWS_AS(ParseRecordLine(R"({"text":"x"})", 1), ParseError);
  CHECK_THROWS_AS(ParseRecordLine("not json", 1), ParseError);
}

TEST_CASE("record files skip bad lines") {
  std::istringstream in(
      "{\"record_id\":\"A\",\"text\":\"one\"}\n"
      "\n"
      "{\"record_id\":\"B\"}\n"
      "{\"record_id\":\"A\",\"text\":\"again\"}\n"
      "{\"record_id\":\"C\",\"text\":\"three\"}\n");
  const RecordBatch batch = ReadRecords(in);
  REQUIRE(batch.records.size() == 2);
  CHECK(batch.records[1].record_id == "C");
  REQUIRE(batch.errors.size() == 2);
  CHECK(batch.errors[0].line() == 3);
  CHECK(batch.errors[1].line() == 4);
}

}  // namespace
}  // namespace mxsem
