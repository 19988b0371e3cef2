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

#ifndef MXSEM_QA_H_
#define MXSEM_QA_H_

#include <atomic>
#include <cstddef>
#include <istream>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mxsem/corpus.h"
#include "mxsem/lexicon.h"
#include "mxsem/mention.h"
#include "mxsem/rules.h"

namespace mxsem {

struct QaQuery {
  std::string question;
  std::string context;

  bool operator==(const QaQuery&) const = default;
};

// Offsets are scalar-value offsets into the context, end exclusive. A
// backend that only knows the answer text sends -1/-1.
struct QaAnswer {
  std::string answer_text;
  long long start = -1;
  long long end = -1;
  double score = 0.0;

  bool operator==(const QaAnswer&) const = default;
};

// The backend could not be reached, timed out, or answered outside the
// wire protocol.
class BackendError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Something that answers extractive questions. Implementations must be
// safe to call from several threads at once.
class QaBackend {
 public:
  virtual ~QaBackend() = default;
  virtual QaAnswer Answer(const QaQuery& query) = 0;
  virtual bool Healthy() = 0;
};

// Wire format of POST /v1/answer.
std::string EncodeQaRequest(const QaQuery& query);
QaQuery DecodeQaRequest(std::string_view body);  // throws ParseError
std::string EncodeQaResponse(const QaAnswer& answer);
QaAnswer DecodeQaResponse(std::string_view body);  // throws BackendError

// Answers from a fixed (question, context) table. Unknown queries get an
// empty answer with score 0. Counts every call.
class MockQaBackend : public QaBackend {
 public:
  MockQaBackend() = default;

  // Adds entries from JSON Lines: {"question", "context", "answer",
  // "start", "end", "score"}; start/end default to -1, score to 1. Throws
  // ParseError.
  void Load(std::istream& in);

  void Add(QaQuery query, QaAnswer answer);

  QaAnswer Answer(const QaQuery& query) override;
  bool Healthy() override { return true; }

  std::size_t calls() const { return calls_.load(); }
  std::vector<QaQuery> queries() const;  // in arrival order

 private:
  std::map<std::pair<std::string, std::string>, QaAnswer> table_;
  std::atomic<std::size_t> calls_{0};
  mutable std::mutex mu_;
  std::vector<QaQuery> log_;
};

// Talks to a QA service over HTTP: POST <endpoint>/v1/answer and
// GET <endpoint>/v1/health. A 503 is retried once.
class HttpQaBackend : public QaBackend {
 public:
  explicit HttpQaBackend(std::string endpoint, double timeout_seconds = 10.0);
  ~HttpQaBackend() override;

  QaAnswer Answer(const QaQuery& query) override;
  bool Healthy() override;

  const std::string& endpoint() const { return endpoint_; }

 private:
  struct Impl;
  std::string endpoint_;
  std::unique_ptr<Impl> impl_;
};

// "What was <trigger>?" with the trigger surface lowercased. Throws
// ContractError unless the trigger is an Action or Observation.
std::string GenerateQuestion(const EntityMention& trigger);

struct QaOptions {
  // Answers scoring below this are dropped.
  double score_floor = 0.10;
  // Concurrent backend calls per sentence.
  std::size_t max_in_flight = 4;
};

// Asks one question per Action/Observation trigger among `base_mentions`
// and turns each usable answer span into a Component linked back to its
// trigger. Identical spans from several triggers become one Component with
// several relations. Components get ordinal and location post-processing.
// The output holds the answer Components, the triggers, and the Ordinal and
// Location mentions split out of answers; other base mentions are left out.
Extraction QaExtractComponents(const Sentence& sentence,
                               const std::vector<EntityMention>& base_mentions,
                               QaBackend& backend, const CompiledLexicon& lexicon,
                               const RuleConfig& config,
                               const QaOptions& options = {},
                               std::vector<std::string>* diagnostics = nullptr);

}  // namespace mxsem

#endif  // MXSEM_QA_H_
