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

#include "mxsem/qa.h"

#include <algorithm>
#include <optional>
#include <thread>
#include <variant>

#include "json.hpp"
#include "mxsem/error.h"
#include "mxsem/utf8.h"

namespace mxsem {

using nlohmann::json;

std::string EncodeQaRequest(const QaQuery& query) {
  return json{{"question", query.question}, {"context", query.context}}.dump();
}

QaQuery DecodeQaRequest(std::string_view body) {
  try {
    const json doc = json::parse(body);
    QaQuery q;
    q.question = doc.at("question").get<std::string>();
    q.context = doc.at("context").get<std::string>();
    return q;
  } catch (const json::exception& e) {
    throw ParseError(0, std::string("QA request: ") + e.what());
  }
}

std::string EncodeQaResponse(const QaAnswer& answer) {
  return json{{"answer", answer.answer_text},
              {"start", answer.start},
              {"end", answer.end},
              {"score", answer.score}}
      .dump();
}

QaAnswer DecodeQaResponse(std::string_view body) {
  json doc;
  try {
    doc = json::parse(body);
  } catch (const json::parse_error& e) {
    throw BackendError(std::string("QA response is not JSON: ") + e.what());
  }
  if (!doc.is_object()) throw BackendError("QA response is not an object");
  auto field = [&](const char* key) -> const json& {
    auto it = doc.find(key);
    if (it == doc.end()) {
      throw BackendError(std::string("QA response lacks \"") + key + "\"");
    }
    return *it;
  };
  QaAnswer a;
  const json& answer = field("answer");
  const json& start = field("start");
  const json& end = field("end");
  const json& score = field("score");
  if (!answer.is_string()) throw BackendError("\"answer\" must be a string");
  if (!start.is_number_integer() || !end.is_number_integer()) {
    throw BackendError("\"start\" and \"end\" must be integers");
  }
  if (!score.is_number()) throw BackendError("\"score\" must be a number");
  a.answer_text = answer.get<std::string>();
  a.start = start.get<long long>();
  a.end = end.get<long long>();
  a.score = score.get<double>();
  if (!(a.score >= 0.0 && a.score <= 1.0)) {
    throw BackendError("\"score\" outside [0, 1]");
  }
  return a;
}

std::string GenerateQuestion(const EntityMention& trigger) {
  if (trigger.sem_type != SemanticType::kAction &&
      trigger.sem_type != SemanticType::kObservation) {
    throw ContractError("question trigger must be an Action or Observation, got " +
                        std::string(ToString(trigger.sem_type)));
  }
  return "What was " + utf8::ToLower(trigger.surface) + "?";
}

namespace {

using CallResult = std::variant<QaAnswer, std::string>;

std::vector<CallResult> AskAll(QaBackend& backend,
                               const std::vector<QaQuery>& queries,
                               std::size_t max_in_flight) {
  std::vector<CallResult> results(queries.size());
  auto ask = [&](std::size_t i) {
    try {
      results[i] = backend.Answer(queries[i]);
    } catch (const BackendError& e) {
      results[i] = std::string(e.what());
    } catch (const std::exception& e) {
      results[i] = std::string("backend failure: ") + e.what();
    }
  };
  const std::size_t workers = std::min(max_in_flight, queries.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < queries.size(); ++i) ask(i);
    return results;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < queries.size(); i = next++) ask(i);
    });
  }
  pool.clear();  // joins
  return results;
}

struct Span {
  std::size_t start;
  std::size_t end;
  auto operator<=>(const Span&) const = default;
};

}  // namespace

Extraction QaExtractComponents(const Sentence& sentence,
                               const std::vector<EntityMention>& base_mentions,
                               QaBackend& backend, const CompiledLexicon& lexicon,
                               const RuleConfig& config, const QaOptions& options,
                               std::vector<std::string>* diagnostics) {
  auto diag = [&](const std::string& msg) {
    if (diagnostics) diagnostics->push_back(msg);
  };

  std::vector<EntityMention> base = base_mentions;
  std::sort(base.begin(), base.end(), MentionLess);

  std::vector<std::size_t> triggers;
  std::vector<QaQuery> queries;
  for (std::size_t i = 0; i < base.size(); ++i) {
    const SemanticType t = base[i].sem_type;
    if (t != SemanticType::kAction && t != SemanticType::kObservation) continue;
    triggers.push_back(i);
    queries.push_back({GenerateQuestion(base[i]), sentence.text});
  }
  if (triggers.empty()) return {};

  const std::vector<CallResult> results =
      AskAll(backend, queries, std::max<std::size_t>(1, options.max_in_flight));

  const std::u32string context = utf8::Decode(sentence.text);
  auto describe = [&](std::size_t t) {
    const EntityMention& m = base[triggers[t]];
    return "trigger \"" + m.surface + "\" [" + std::to_string(m.start) + "," +
           std::to_string(m.end) + ")";
  };

  // Answer span -> triggers (positions in `triggers`) that produced it.
  std::map<Span, std::vector<std::size_t>> answers;
  for (std::size_t t = 0; t < triggers.size(); ++t) {
    if (const auto* err = std::get_if<std::string>(&results[t])) {
      diag(describe(t) + ": " + *err);
      continue;
    }
    const QaAnswer& a = std::get<QaAnswer>(results[t]);
    if (utf8::CollapseWhitespace(a.answer_text).empty()) continue;
    if (a.score < options.score_floor) {
      diag(describe(t) + ": answer \"" + a.answer_text + "\" scored " +
           std::to_string(a.score) + ", below the floor");
      continue;
    }
    const std::u32string wanted = utf8::Decode(a.answer_text);
    Span span{};
    if (a.start == -1 && a.end == -1) {
      const auto pos = context.find(wanted);
      if (pos == std::u32string::npos) {
        diag(describe(t) + ": answer \"" + a.answer_text +
             "\" does not occur in the sentence");
        continue;
      }
      span = {pos, pos + wanted.size()};
    } else {
      if (a.start < 0 || a.end <= a.start ||
          static_cast<std::size_t>(a.end) > context.size() ||
          context.compare(static_cast<std::size_t>(a.start),
                          static_cast<std::size_t>(a.end - a.start), wanted) != 0) {
        diag(describe(t) + ": answer offsets [" + std::to_string(a.start) + "," +
             std::to_string(a.end) + ") do not fit the sentence; discarded");
        continue;
      }
      span = {static_cast<std::size_t>(a.start), static_cast<std::size_t>(a.end)};
    }
    answers[span].push_back(t);
  }

  for (auto it = answers.begin(); it != answers.end(); ++it) {
    for (auto jt = std::next(it); jt != answers.end(); ++jt) {
      if (jt->first.start < it->first.end && it->first.start < jt->first.end) {
        diag("overlapping answers [" + std::to_string(it->first.start) + "," +
             std::to_string(it->first.end) + ") and [" +
             std::to_string(jt->first.start) + "," +
             std::to_string(jt->first.end) + ") kept separately");
      }
    }
  }

  // Build the output with tags so relations survive the final sort.
  struct Tagged {
    EntityMention mention;
    std::optional<std::size_t> base_index;   // for triggers
    std::optional<Span> answer;              // for QA components
  };
  std::vector<Tagged> tagged;
  std::vector<EntityMention> extra;

  for (const auto& [span, who] : answers) {
    EntityMention c;
    c.start = span.start;
    c.end = span.end;
    c.surface = utf8::Encode(
        std::u32string_view(context).substr(span.start, span.end - span.start));
    c.sem_type = SemanticType::kComponent;
    c.provenance = Provenance::kQa;
    auto done = PostProcessComponent(std::move(c), sentence.text, lexicon,
                                     config, extra, diagnostics);
    if (!done) continue;
    // Tighten the span to the residual name when it is contiguous text.
    std::u32string hay(context.substr(done->start, done->end - done->start));
    std::u32string name = utf8::Decode(done->surface);
    for (auto& ch : hay) ch = utf8::ToLower(ch);
    for (auto& ch : name) ch = utf8::ToLower(ch);
    if (const auto pos = hay.find(name); pos != std::u32string::npos) {
      done->start += pos;
      done->end = done->start + name.size();
    }
    tagged.push_back({std::move(*done), std::nullopt, span});
  }

  for (std::size_t t : triggers) tagged.push_back({base[t], t, std::nullopt});
  for (EntityMention& m : extra) {
    const bool duplicate =
        std::any_of(tagged.begin(), tagged.end(), [&](const Tagged& o) {
          return o.mention.start == m.start && o.mention.end == m.end &&
                 o.mention.sem_type == m.sem_type;
        });
    if (!duplicate) tagged.push_back({std::move(m), std::nullopt, std::nullopt});
  }

  std::stable_sort(tagged.begin(), tagged.end(),
                   [](const Tagged& a, const Tagged& b) {
                     return MentionLess(a.mention, b.mention);
                   });

  Extraction out;
  std::map<std::size_t, std::size_t> base_to_out;
  std::map<Span, std::size_t> answer_to_out;
  for (std::size_t i = 0; i < tagged.size(); ++i) {
    if (tagged[i].base_index) base_to_out[*tagged[i].base_index] = i;
    if (tagged[i].answer) answer_to_out[*tagged[i].answer] = i;
    out.mentions.push_back(std::move(tagged[i].mention));
  }
  for (const auto& [span, who] : answers) {
    auto c = answer_to_out.find(span);
    if (c == answer_to_out.end()) continue;
    for (std::size_t t : who) {
      const std::size_t obj = base_to_out.at(triggers[t]);
      out.relations.push_back(
          {c->second,
           out.mentions[obj].sem_type == SemanticType::kAction
               ? Predicate::kHasAssociatedAction
               : Predicate::kHasAssociatedObservation,
           obj});
    }
  }
  std::sort(out.relations.begin(), out.relations.end(),
            [&](const Relation& x, const Relation& y) {
              return std::tuple(out.mentions[x.subject].start,
                                out.mentions[x.object].start, x) <
                     std::tuple(out.mentions[y.subject].start,
                                out.mentions[y.object].start, y);
            });
  out.relations.erase(std::unique(out.relations.begin(), out.relations.end()),
                      out.relations.end());
  return out;
}

}  // namespace mxsem
