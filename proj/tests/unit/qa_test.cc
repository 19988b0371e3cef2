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

#include <atomic>
#include <random>
#include <sstream>
#include <thread>

#include "doctest.h"
#include "httplib.h"
#include "mxsem/error.h"
#include "mxsem/qa.h"
#include "test_util.h"

namespace mxsem {
namespace {

using testing::LexiconFrom;
using testing::MakeSentence;
using testing::Mention;

const char* kQaLexicon =
    "Component\thttp://x/Brake\tbrake\n"
    "Component\thttp://x/Gasket\tgasket\n"
    "Action\thttp://x/Removed\tremoved\n"
    "Action\thttp://x/Replaced\treplaced\n"
    "Observation\thttp://x/Leaking\tleaking\n"
    "Location\thttp://x/Left\tleft\n";

struct Run {
  Extraction extraction;
  std::vector<std::string> diagnostics;
};

Run Ask(MockQaBackend& mock, const std::string& text, QaOptions options = {}) {
  const auto lex = LexiconFrom(kQaLexicon);
  const Sentence s = MakeSentence(text);
  Run run;
  run.extraction = QaExtractComponents(s, LookupAll(s, Tokenize(s.text), lex), mock, lex,
                                       RuleConfig{}, options, &run.diagnostics);
  return run;
}

TEST_CASE("question template") {
  CHECK(GenerateQuestion(Mention("replaced", 0, 8, SemanticType::kAction)) ==
        "What was replaced?");
  CHECK(GenerateQuestion(Mention("Leaking", 0, 7, SemanticType::kObservation)) ==
        "What was leaking?");
  CHECK_THROWS_AS(GenerateQuestion(Mention("left", 0, 4, SemanticType::kLocation)),
                  ContractError);
}

TEST_CASE("wire format") {
  const QaQuery q{"What was replaced?", "the \"intake\" gasket was replaced"};
  CHECK(DecodeQaRequest(EncodeQaRequest(q)) == q);
  const QaAnswer a{"intake gasket", 4, 17, 0.75};
  CHECK(DecodeQaResponse(EncodeQaResponse(a)) == a);

  CHECK_THROWS_AS(DecodeQaRequest("{\"question\": 1}"), ParseError);
  CHECK_THROWS_AS(DecodeQaRequest("nope"), ParseError);
  CHECK_THROWS_AS(DecodeQaResponse("nope"), BackendError);
  CHECK_THROWS_AS(DecodeQaResponse(R"({"answer":"x","start":0,"end":1})"), BackendError);
  CHECK_THROWS_AS(DecodeQaResponse(R"({"answer":"x","start":0.5,"end":1,"score":1})"),
                  BackendError);
  CHECK_THROWS_AS(DecodeQaResponse(R"({"answer":"x","start":0,"end":1,"score":1.5})"),
                  BackendError);
  CHECK_THROWS_AS(DecodeQaResponse(R"({"answer":7,"start":0,"end":1,"score":1})"),
                  BackendError);
}

TEST_CASE("answer becomes a linked component") {
  MockQaBackend mock;
  mock.Add({"What was removed?", "removed motor brake"}, {"motor brake", 8, 19, 0.9});
  const Run run = Ask(mock, "removed motor brake");
  const Extraction& e = run.extraction;
  REQUIRE(e.mentions.size() == 2);
  CHECK(e.mentions[0].surface == "removed");
  CHECK(e.mentions[1].surface == "motor brake");
  CHECK(e.mentions[1].start == 8);
  CHECK(e.mentions[1].end == 19);
  CHECK(e.mentions[1].provenance == Provenance::kQa);
  REQUIRE(e.relations.size() == 1);
  CHECK(e.relations[0] == Relation{1, Predicate::kHasAssociatedAction, 0});
  CHECK(mock.calls() == 1);
}

TEST_CASE("answer ordinals are split off") {
  MockQaBackend mock;
  const std::string text = "#1 intake gasket leaking";
  mock.Add({"What was leaking?", text}, {"#1 intake gasket", 0, 16, 0.8});
  const Extraction e = Ask(mock, text).extraction;
  const auto comp = std::find_if(e.mentions.begin(), e.mentions.end(), [](const auto& m) {
    return m.sem_type == SemanticType::kComponent;
  });
  REQUIRE(comp != e.mentions.end());
  CHECK(comp->surface == "intake gasket");
  CHECK(comp->ordinal == 1);
  CHECK(comp->start == 3);
  CHECK(comp->end == 16);
  const auto ord = std::find_if(e.mentions.begin(), e.mentions.end(), [](const auto& m) {
    return m.sem_type == SemanticType::kOrdinal;
  });
  REQUIRE(ord != e.mentions.end());
  CHECK(ord->surface == "#1");
  REQUIRE(e.relations.size() == 1);
  CHECK(e.relations[0].predicate == Predicate::kHasAssociatedObservation);
}

TEST_CASE("answer locations are split off") {
  MockQaBackend mock;
  const std::string text = "replaced left gasket";
  mock.Add({"What was replaced?", text}, {"left gasket", 9, 20, 0.8});
  const Extraction e = Ask(mock, text).extraction;
  const auto comp = std::find_if(e.mentions.begin(), e.mentions.end(), [](const auto& m) {
    return m.sem_type == SemanticType::kComponent;
  });
  REQUIRE(comp != e.mentions.end());
  CHECK(comp->surface == "gasket");
  CHECK(comp->location == "left");
  CHECK(comp->start == 14);
}

TEST_CASE("no triggers, no calls") {
  MockQaBackend mock;
  const Run run = Ask(mock, "gasket and brake");
  CHECK(run.extraction.mentions.empty());
  CHECK(run.extraction.relations.empty());
  CHECK(mock.calls() == 0);
}

TEST_CASE("one call per trigger and merged identical spans") {
  MockQaBackend mock;
  const std::string text = "removed gasket leaking replaced";
  for (const char* q : {"What was removed?", "What was leaking?", "What was replaced?"}) {
    mock.Add({q, text}, {"gasket", 8, 14, 0.7});
  }
  const Run run = Ask(mock, text);
  CHECK(mock.calls() == 3);
  const auto& e = run.extraction;
  CHECK(std::count_if(e.mentions.begin(), e.mentions.end(), [](const auto& m) {
          return m.sem_type == SemanticType::kComponent;
        }) == 1);
  CHECK(e.relations.size() == 3);
  std::set<std::string> asked;
  for (const auto& q : mock.queries()) asked.insert(q.question);
  CHECK(asked.size() == 3);
}

TEST_CASE("bad answers are dropped with diagnostics") {
  MockQaBackend mock;
  const std::string text = "removed brake leaking";
  mock.Add({"What was removed?", text}, {"brake", 8, 13, 0.05});
  mock.Add({"What was leaking?", text}, {"brake", 2, 7, 0.9});
  QaOptions options;
  const Run run = Ask(mock, text, options);
  CHECK(run.extraction.relations.empty());
  CHECK(run.diagnostics.size() == 2);

  options.score_floor = 0.0;
  const Run low = Ask(mock, text, options);
  CHECK(low.extraction.relations.size() == 1);
}

TEST_CASE("text-only answers resolve to the first occurrence") {
  MockQaBackend mock;
  const std::string text = "removed brake, brake leaking";
  mock.Add({"What was removed?", text}, {"brake", -1, -1, 0.9});
  mock.Add({"What was leaking?", text}, {"valve", -1, -1, 0.9});
  const Run run = Ask(mock, text);
  const auto& e = run.extraction;
  REQUIRE(e.relations.size() == 1);
  CHECK(e.mentions[e.relations[0].subject].start == 8);
  CHECK(run.diagnostics.size() == 1);
}

class FailingBackend : public QaBackend {
 public:
  QaAnswer Answer(const QaQuery& q) override {
    ++calls;
    if (q.question == "What was removed?") throw BackendError("timeout");
    return {"brake", 8, 13, 0.9};
  }
  bool Healthy() override { return true; }
  std::atomic<int> calls{0};
};

TEST_CASE("backend failures are per trigger") {
  const auto lex = LexiconFrom(kQaLexicon);
  const Sentence s = MakeSentence("removed brake leaking");
  FailingBackend backend;
  std::vector<std::string> diags;
  const Extraction e = QaExtractComponents(s, LookupAll(s, Tokenize(s.text), lex), backend, lex,
                                           RuleConfig{}, QaOptions{}, &diags);
  CHECK(backend.calls == 2);
  REQUIRE(e.relations.size() == 1);
  CHECK(e.relations[0].predicate == Predicate::kHasAssociatedObservation);
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].find("timeout") != std::string::npos);
}

TEST_CASE("every answer component has a relation") {
  const auto lex = LexiconFrom(kQaLexicon);
  const std::vector<std::string> words = {"removed", "brake", "gasket", "leaking",
                                          "replaced", "left", "#2", "the"};
  std::mt19937 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    std::string text;
    const int n = std::uniform_int_distribution<int>(1, 8)(rng);
    for (int i = 0; i < n; ++i) {
      if (!text.empty()) text += ' ';
      text += words[std::uniform_int_distribution<std::size_t>(0, words.size() - 1)(rng)];
    }
    MockQaBackend mock;
    std::size_t triggers = 0;
    const Sentence s = MakeSentence(text);
    const auto base = LookupAll(s, Tokenize(s.text), lex);
    for (const auto& m : base) {
      if (m.sem_type != SemanticType::kAction && m.sem_type != SemanticType::kObservation) {
        continue;
      }
      ++triggers;
      const std::size_t from = std::uniform_int_distribution<std::size_t>(0, text.size() - 1)(rng);
      const std::size_t to =
          std::uniform_int_distribution<std::size_t>(from + 1, text.size())(rng);
      mock.Add({GenerateQuestion(m), text},
               {text.substr(from, to - from), static_cast<long long>(from),
                static_cast<long long>(to), 0.5});
    }
    const Extraction e = QaExtractComponents(s, base, mock, lex, RuleConfig{});
    CHECK(mock.calls() == triggers);
    for (std::size_t i = 0; i < e.mentions.size(); ++i) {
      if (e.mentions[i].provenance != Provenance::kQa ||
          e.mentions[i].sem_type != SemanticType::kComponent) {
        continue;
      }
      CHECK(std::any_of(e.relations.begin(), e.relations.end(),
                        [&](const Relation& r) { return r.subject == i; }));
    }
    for (const auto& r : e.relations) {
      CHECK(e.mentions[r.subject].sem_type == SemanticType::kComponent);
      const auto t = e.mentions[r.object].sem_type;
      CHECK((r.predicate == Predicate::kHasAssociatedAction) == (t == SemanticType::kAction));
    }
    // Same inputs, same output.
    CHECK(QaExtractComponents(s, base, mock, lex, RuleConfig{}) == e);
  }
}

TEST_CASE("mock table file") {
  std::istringstream in(
      R"({"question":"What was replaced?","context":"c","answer":"gasket","start":0,"end":6,"score":0.5})"
      "\n"
      R"({"question":"What was leaking?","context":"c","answer":"seal"})"
      "\n");
  MockQaBackend mock;
  mock.Load(in);
  CHECK(mock.Answer({"What was replaced?", "c"}) == QaAnswer{"gasket", 0, 6, 0.5});
  CHECK(mock.Answer({"What was leaking?", "c"}) == QaAnswer{"seal", -1, -1, 1.0});
  CHECK(mock.Answer({"What was worn?", "c"}).answer_text.empty());
  CHECK(mock.calls() == 3);
  std::istringstream bad("{\"question\":1}\n");
  CHECK_THROWS_AS(mock.Load(bad), ParseError);
}

// A local service speaking the wire protocol.
class LocalService {
 public:
  explicit LocalService(int failures_before_success)
      : failures_(failures_before_success) {
    server_.Post("/qa/v1/answer", [this](const httplib::Request& req, httplib::Response& res) {
      ++requests;
      if (failures_-- > 0) {
        res.status = 503;
        return;
      }
      try {
        const QaQuery q = DecodeQaRequest(req.body);
        if (q.context == "junk") {
          res.set_content("{\"answer\": 3}", "application/json");
          return;
        }
        const auto pos = q.context.find("gasket");
        QaAnswer a{"gasket", static_cast<long long>(pos), static_cast<long long>(pos + 6), 0.9};
        res.set_content(EncodeQaResponse(a), "application/json");
      } catch (const ParseError&) {
        res.status = 400;
      }
    });
    server_.Get("/qa/v1/health", [](const httplib::Request&, httplib::Response& res) {
      res.set_content("ok", "text/plain");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~LocalService() {
    server_.stop();
    thread_.join();
  }
  std::string endpoint() const { return "http://127.0.0.1:" + std::to_string(port_) + "/qa"; }

  std::atomic<int> requests{0};

 private:
  httplib::Server server_;
  std::atomic<int> failures_;
  int port_ = 0;
  std::thread thread_;
};

TEST_CASE("http backend speaks the protocol") {
  LocalService service(0);
  HttpQaBackend backend(service.endpoint(), 5.0);
  CHECK(backend.Healthy());
  const QaAnswer a = backend.Answer({"What was replaced?", "the intake gasket was replaced"});
  CHECK(a.answer_text == "gasket");
  CHECK(a.start == 11);
  CHECK(a.end == 17);
  CHECK_THROWS_AS(backend.Answer({"What was replaced?", "junk"}), BackendError);
}

TEST_CASE("http backend retries one 503") {
  LocalService once(1);
  HttpQaBackend backend(once.endpoint(), 5.0);
  CHECK(backend.Answer({"What was replaced?", "gasket"}).answer_text == "gasket");
  CHECK(once.requests == 2);

  LocalService twice(2);
  HttpQaBackend stubborn(twice.endpoint(), 5.0);
  CHECK_THROWS_AS(stubborn.Answer({"What was replaced?", "gasket"}), BackendError);
  CHECK(twice.requests == 2);
}

TEST_CASE("unreachable endpoint") {
  int port = 0;
  {
    httplib::Server probe;
    port = probe.bind_to_any_port("127.0.0.1");
  }
  HttpQaBackend backend("http://127.0.0.1:" + std::to_string(port), 0.5);
  CHECK(!backend.Healthy());
  CHECK_THROWS_AS(backend.Answer({"What was replaced?", "gasket"}), BackendError);
}

}  // namespace
}  // namespace mxsem
